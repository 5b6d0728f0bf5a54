/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace rom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenvalues of a real square matrix; complex values come in conjugate pairs.
using Spectrum = Eigen::VectorXcd;

/// Thin singular value decomposition m = u * diag(sigma) * v^T, r = min(rows, cols).
struct SvdResult {
    Matrix u;                ///< rows x r, orthonormal columns
    Vector singular_values;  ///< length r, nonincreasing, nonnegative
    Matrix v;                ///< cols x r, orthonormal columns
};

/// Thin SVD of a dense real matrix.  Throws NumericError if the iteration
/// fails to converge, ValidationError on empty or non-finite input.
SvdResult thin_svd(const Matrix& m);

/// Moore-Penrose pseudo-inverse of a full-row-rank wide matrix x (rows <= cols).
///
/// Computed from the Householder QR factorization x^T = Q R as x^+ = Q (R^T)^-1,
/// which avoids squaring the condition number the way the normal-equation form
/// x^T (x x^T)^-1 does.  Throws NumericError naming the offending row when a
/// diagonal entry of R falls below 1e-12 times the largest one.
Matrix qr_pseudo_inverse(const Matrix& x);

/// exp(m * t) by scaling-and-squaring with a degree-13 Pade approximant.
Matrix matrix_exponential(const Matrix& m, double t = 1.0);

/// Eigenvalues of a general real square matrix.
Spectrum eigenvalues(const Matrix& m);

/// Solve a * x = b for symmetric positive definite a (Cholesky).
Matrix solve_spd(const Matrix& a, const Matrix& b);

double max_real_part(const Spectrum& s);
double min_abs_eigenvalue(const Spectrum& s);

}  // namespace rom
