/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/pod.hpp"

#include "rom/csv.hpp"
#include "rom/error.hpp"

#include <cmath>
#include <string>

namespace rom::pod {

std::vector<double> ric_from_singular_values(const Vector& singular_values) {
    const Eigen::Index r = singular_values.size();
    if (r == 0) {
        throw ValidationError("ric_from_singular_values: empty spectrum");
    }
    // Tail sums accumulated from the smallest value up, to keep the tiny tail
    // fractions accurate.
    std::vector<double> tail(static_cast<std::size_t>(r) + 1, 0.0);
    for (Eigen::Index k = r - 1; k >= 0; --k) {
        const double sigma = singular_values(k);
        tail[static_cast<std::size_t>(k)] =
            tail[static_cast<std::size_t>(k) + 1] + sigma * sigma;
    }
    const double total = tail[0];
    if (!(total > 0.0)) {
        throw ValidationError("ric_from_singular_values: all singular values are zero");
    }
    std::vector<double> ric(static_cast<std::size_t>(r));
    for (Eigen::Index k = 1; k <= r; ++k) {
        ric[static_cast<std::size_t>(k - 1)] = tail[static_cast<std::size_t>(k)] / total;
    }
    return ric;
}

PodBasis build_basis(const SnapshotSet& s, double eps, Eigen::Index max_rank) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ValidationError("build_basis: eps must lie in (0, 1), got " + std::to_string(eps));
    }
    if (max_rank < 1) {
        throw ValidationError("build_basis: max_rank must be >= 1");
    }
    if (s.displacements.norm() == 0.0) {
        throw ValidationError("build_basis: degenerate data, displacement snapshots are all zero");
    }

    const SvdResult svd = thin_svd(s.displacements);
    const std::vector<double> ric = ric_from_singular_values(svd.singular_values);

    Eigen::Index k_eps = static_cast<Eigen::Index>(ric.size());
    for (std::size_t i = 0; i < ric.size(); ++i) {
        if (ric[i] <= eps) {
            k_eps = static_cast<Eigen::Index>(i) + 1;
            break;
        }
    }

    PodBasis basis;
    basis.rank = std::min(k_eps, std::min(max_rank, svd.u.cols()));
    basis.modes = svd.u.leftCols(basis.rank);
    basis.singular_values = svd.singular_values;
    basis.eps = eps;
    basis.source = "theta=(" + csv::format_double(s.theta.ca) + "," +
                   csv::format_double(s.theta.ratio) + ")";
    return basis;
}

std::vector<std::pair<int, double>> ric_curve(const SnapshotSet& s) {
    if (s.displacements.norm() == 0.0) {
        throw ValidationError("ric_curve: degenerate data, displacement snapshots are all zero");
    }
    const SvdResult svd = thin_svd(s.displacements);
    const std::vector<double> ric = ric_from_singular_values(svd.singular_values);
    std::vector<std::pair<int, double>> curve;
    curve.reserve(ric.size());
    for (std::size_t i = 0; i < ric.size(); ++i) {
        curve.emplace_back(static_cast<int>(i) + 1, ric[i]);
    }
    return curve;
}

Vector project(const PodBasis& basis, const Vector& field) {
    if (field.size() != basis.modes.rows()) {
        throw ValidationError("project: field length " + std::to_string(field.size()) +
                              " does not match basis dimension " +
                              std::to_string(basis.modes.rows()));
    }
    return basis.modes.transpose() * field;
}

Vector reconstruct(const PodBasis& basis, const Vector& reduced) {
    if (reduced.size() != basis.rank) {
        throw ValidationError("reconstruct: reduced length " + std::to_string(reduced.size()) +
                              " does not match truncation rank " + std::to_string(basis.rank));
    }
    return basis.modes * reduced;
}

}  // namespace rom::pod
