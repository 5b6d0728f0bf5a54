/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/csv.hpp"

#include "rom/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rom::csv {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open for reading: " + path.string());
    }
    return in;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_double(const std::string& field, const std::filesystem::path& path) {
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || (end != nullptr && *end != '\0')) {
        throw IoError("malformed numeric field '" + field + "' in " + path.string());
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
    std::ofstream out = open_out(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

Matrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const std::string& f : fields) {
            row.push_back(parse_double(f, path));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError("ragged CSV rows in " + path.string());
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw IoError("empty CSV file: " + path.string());
    }
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return m;
}

void write_pairs(const std::filesystem::path& path,
                 const std::vector<std::pair<std::string, std::string>>& rows) {
    std::ofstream out = open_out(path);
    for (const auto& [key, value] : rows) {
        out << key << ',' << value << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

std::vector<std::pair<std::string, std::string>> read_pairs(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<std::pair<std::string, std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 2) {
            throw IoError("expected key,value rows in " + path.string());
        }
        rows.emplace_back(fields[0], fields[1]);
    }
    return rows;
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_out(path);
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j > 0) {
            out << ',';
        }
        out << header[j];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(row[j]);
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace rom::csv
