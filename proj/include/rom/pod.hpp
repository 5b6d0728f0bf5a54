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
#include "rom/snapshot.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rom::pod {

/// Truncated orthonormal basis extracted from displacement snapshots.
struct PodBasis {
    Matrix modes;            ///< d x K, the leading left singular vectors
    Vector singular_values;  ///< all min(d, N) singular values of the snapshot matrix
    Eigen::Index rank = 0;   ///< K
    double eps = 0.0;        ///< accuracy threshold the truncation was chosen for
    std::string source;      ///< identifier of the snapshot set the basis came from
};

/// Relative information content neglected when truncating at rank K:
/// RIC(K) = sum_{k>K} sigma_k^2 / sum_k sigma_k^2.  Entry i holds RIC(i + 1).
std::vector<double> ric_from_singular_values(const Vector& singular_values);

/// Singular value decomposition of the displacement snapshot matrix followed by
/// truncation at the smallest K with RIC(K) <= eps, capped at max_rank.
PodBasis build_basis(const SnapshotSet& s, double eps, Eigen::Index max_rank);

/// (K, RIC(K)) for K = 1 .. min(d, N); nonincreasing, ends at zero.
std::vector<std::pair<int, double>> ric_curve(const SnapshotSet& s);

/// Reduced coordinates of a full-order field: modes^T * field.
Vector project(const PodBasis& basis, const Vector& field);

/// Full-order field of reduced coordinates: modes * reduced.
Vector reconstruct(const PodBasis& basis, const Vector& reduced);

}  // namespace rom::pod
