/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace rom {

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments, shape mismatches, out-of-contract data.  CLI exit code 2.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Factorization breakdowns, non-convergence, rank deficiencies.  CLI exit code 3.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// File format and filesystem failures.  CLI exit code 4.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace rom
