/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#pragma once

#include "rom/rom_model.hpp"
#include "rom/snapshot.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace rom::param {

/// Training samples over the (ca, ratio) plane.  All samples must share the
/// node count, snapshot count, and snapshot spacing so that trajectories can
/// be combined pointwise in time.
struct ParamDatabase {
    struct Sample {
        ParamCouple theta;
        SnapshotSet data;
        std::string source;
    };
    std::vector<Sample> samples;
    Eigen::Vector2d axis_scale{1.0, 1.0};  ///< optional per-axis distance weights

    void add(SnapshotSet data, std::string source = {});
};

/// Loads every *.romsnap file in a directory, sorted by filename.
ParamDatabase load_database(const std::filesystem::path& dir);

/// Result of a barycentric query.
struct BarycentricQuery {
    ParamCouple theta;
    std::array<int, 3> vertex_index{-1, -1, -1};
    std::array<ParamCouple, 3> vertices;
    Eigen::Vector3d lambdas{0.0, 0.0, 0.0};
    bool extrapolation = false;  ///< some lambda falls outside [0, 1]
};

/// The three samples nearest to theta that form a nondegenerate triangle,
/// chosen by ascending distance with ties broken by sample index.
std::array<int, 3> find_triangle(const ParamDatabase& db, const ParamCouple& theta);

/// Affine weights with sum(lambda) = 1 and sum(lambda_i theta_i) = theta.
/// Weights may leave [0, 1] when theta is outside the triangle.
Eigen::Vector3d barycentric_coords(const std::array<ParamCouple, 3>& vertices,
                                   const ParamCouple& theta);

/// Pointwise-in-time affine combination of the three vertex trajectories
/// (displacements, velocities, and initial positions share the weights).
/// A theta that exactly matches a sample returns that sample's data verbatim.
SnapshotSet predict_trajectory(const ParamDatabase& db, const ParamCouple& theta,
                               BarycentricQuery* info = nullptr);

/// predict_trajectory followed by the standard identification pipeline.
RomModel rom_at(const ParamDatabase& db, const ParamCouple& theta, const TrainConfig& config,
                BarycentricQuery* info = nullptr);

struct SweepRow {
    double ca = 0.0;
    double ratio = 0.0;
    double t = 0.0;
    double eps_shape = 0.0;
};

/// For every sample of `test`, builds the interpolated model from `train` and
/// reports the shape error against the test data at every snapshot time.
std::vector<SweepRow> sweep(const ParamDatabase& train, const ParamDatabase& test,
                            const TrainConfig& config);

}  // namespace rom::param
