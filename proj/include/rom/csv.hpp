/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#pragma once

#include "rom/linalg.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace rom::csv {

/// Format a double with enough digits to round-trip exactly through parsing.
std::string format_double(double value);

/// Write a dense matrix as headerless CSV, one matrix column per CSV column.
void write_matrix(const std::filesystem::path& path, const Matrix& m);

/// Read a headerless numeric CSV into a matrix.  All rows must have the same
/// number of fields.
Matrix read_matrix(const std::filesystem::path& path);

/// Write key,value rows.
void write_pairs(const std::filesystem::path& path,
                 const std::vector<std::pair<std::string, std::string>>& rows);

/// Read key,value rows; later duplicates win.
std::vector<std::pair<std::string, std::string>> read_pairs(const std::filesystem::path& path);

/// Open a CSV file, write a header line, then rows of doubles.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

}  // namespace rom::csv
