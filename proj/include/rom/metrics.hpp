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
#include "rom/rom_model.hpp"
#include "rom/snapshot.hpp"

#include <optional>
#include <vector>

namespace rom::metrics {

/// A 3D point set, one point per column.
using PointCloud = Eigen::Matrix3Xd;

/// View a flat (x0,y0,z0,x1,...) coordinate vector as a point cloud.
Eigen::Map<const PointCloud> as_point_cloud(const Vector& flat);

/// Modified Hausdorff distance: the larger of the two directed mean
/// nearest-neighbor distances between the clouds.  Symmetric; zero exactly
/// when each point of one cloud coincides with a point of the other.
double modified_hausdorff(const Eigen::Ref<const PointCloud>& a,
                          const Eigen::Ref<const PointCloud>& b);

/// Per-time shape error between reference data and reconstructed positions.
struct ShapeErrorSeries {
    std::vector<double> times;
    std::vector<double> eps_shape;  ///< MHD / ref_length
    std::vector<double> rms;        ///< index-paired RMS distance / ref_length (supplementary)

    double max_eps_shape() const;
};

/// eps_shape(t) = MHD(reference shape, reconstructed shape) / ref_length at
/// every snapshot time.  rom_positions must hold one column per snapshot of
/// `fom`, on the same time grid.
ShapeErrorSeries shape_error_series(const SnapshotSet& fom, const Matrix& rom_positions,
                                    double ref_length);

struct LearningStudyRow {
    double t_learn = 0.0;
    double eps_shape_end = 0.0;  ///< shape error at the final reference time
};

/// Trains on successively longer snapshot prefixes and reports the shape
/// error at the end of the full horizon for each learning time.
std::vector<LearningStudyRow> learning_time_study(const SnapshotSet& s,
                                                  const std::vector<double>& t_learn_values,
                                                  const TrainConfig& config);

/// First time from which the velocity columns stay stationary,
/// |v[n+1] - v[n]| / |v[n]| <= tol to the end of the record.  This is a proxy
/// criterion standing in for surface-area-based steady-state detection, which
/// needs mesh connectivity.
std::optional<double> steady_state_time(const SnapshotSet& s, double tol = 1e-4);

}  // namespace rom::metrics
