/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/param_space.hpp"

#include "rom/error.hpp"
#include "rom/metrics.hpp"
#include "rom/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rom::param {

namespace {

std::string theta_string(const ParamCouple& theta) {
    return "(ca=" + std::to_string(theta.ca) + ", ratio=" + std::to_string(theta.ratio) + ")";
}

void check_compatible(const SnapshotSet& a, const SnapshotSet& b, const std::string& context) {
    std::string mismatched;
    if (a.dofs() != b.dofs()) {
        mismatched += " n_nodes";
    }
    if (a.snapshot_count() != b.snapshot_count()) {
        mismatched += " N";
    }
    if (a.dt != b.dt) {
        mismatched += " dt";
    }
    if (!mismatched.empty()) {
        throw ValidationError(context + ": incompatible sample fields:" + mismatched);
    }
}

double distance_squared(const ParamDatabase& db, const ParamCouple& a, const ParamCouple& b) {
    const double dx = (a.ca - b.ca) * db.axis_scale[0];
    const double dy = (a.ratio - b.ratio) * db.axis_scale[1];
    return dx * dx + dy * dy;
}

// Twice the signed triangle area in the (ca, ratio) plane.
double signed_area2(const ParamCouple& a, const ParamCouple& b, const ParamCouple& c) {
    return (b.ca - a.ca) * (c.ratio - a.ratio) - (c.ca - a.ca) * (b.ratio - a.ratio);
}

bool degenerate(const ParamCouple& a, const ParamCouple& b, const ParamCouple& c) {
    const auto sq = [](double x) { return x * x; };
    const double diameter_sq =
        std::max({sq(a.ca - b.ca) + sq(a.ratio - b.ratio), sq(a.ca - c.ca) + sq(a.ratio - c.ratio),
                  sq(b.ca - c.ca) + sq(b.ratio - c.ratio)});
    return std::abs(0.5 * signed_area2(a, b, c)) <= 1e-12 * diameter_sq;
}

}  // namespace

void ParamDatabase::add(SnapshotSet data, std::string source) {
    validate(data);
    if (!samples.empty()) {
        check_compatible(samples.front().data, data, "ParamDatabase::add");
    }
    for (const Sample& sample : samples) {
        if (sample.theta.ca == data.theta.ca && sample.theta.ratio == data.theta.ratio) {
            throw ValidationError("ParamDatabase::add: duplicate parameter couple " +
                                  theta_string(data.theta));
        }
    }
    const ParamCouple theta = data.theta;
    samples.push_back(Sample{theta, std::move(data), std::move(source)});
}

ParamDatabase load_database(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("load_database: not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".romsnap") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());

    ParamDatabase db;
    for (const auto& path : paths) {
        try {
            db.add(read_snapshot_set(path), path.filename().string());
        } catch (const ValidationError& e) {
            throw ValidationError(path.string() + ": " + e.what());
        }
    }
    return db;
}

std::array<int, 3> find_triangle(const ParamDatabase& db, const ParamCouple& theta) {
    if (db.samples.size() < 3) {
        throw ValidationError("find_triangle: database needs at least 3 samples, has " +
                              std::to_string(db.samples.size()));
    }

    std::vector<int> order(db.samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return distance_squared(db, db.samples[static_cast<std::size_t>(a)].theta, theta) <
               distance_squared(db, db.samples[static_cast<std::size_t>(b)].theta, theta);
    });

    const int first = order[0];
    const int second = order[1];
    for (std::size_t i = 2; i < order.size(); ++i) {
        const int third = order[i];
        if (!degenerate(db.samples[static_cast<std::size_t>(first)].theta,
                        db.samples[static_cast<std::size_t>(second)].theta,
                        db.samples[static_cast<std::size_t>(third)].theta)) {
            return {first, second, third};
        }
    }
    throw ValidationError("find_triangle: all samples are collinear, no nondegenerate "
                          "triangle exists around " + theta_string(theta));
}

Eigen::Vector3d barycentric_coords(const std::array<ParamCouple, 3>& vertices,
                                   const ParamCouple& theta) {
    if (degenerate(vertices[0], vertices[1], vertices[2])) {
        throw ValidationError("barycentric_coords: degenerate triangle");
    }
    Eigen::Matrix3d system;
    Eigen::Vector3d rhs;
    for (int j = 0; j < 3; ++j) {
        system(0, j) = 1.0;
        system(1, j) = vertices[static_cast<std::size_t>(j)].ca;
        system(2, j) = vertices[static_cast<std::size_t>(j)].ratio;
    }
    rhs << 1.0, theta.ca, theta.ratio;
    return system.partialPivLu().solve(rhs);
}

SnapshotSet predict_trajectory(const ParamDatabase& db, const ParamCouple& theta,
                               BarycentricQuery* info) {
    if (db.samples.empty()) {
        throw ValidationError("predict_trajectory: empty database");
    }

    // An exact parameter match reproduces that sample verbatim.
    for (std::size_t i = 0; i < db.samples.size(); ++i) {
        const ParamDatabase::Sample& match = db.samples[i];
        if (match.theta.ca == theta.ca && match.theta.ratio == theta.ratio) {
            if (info != nullptr) {
                *info = BarycentricQuery{};
                info->theta = theta;
                info->vertex_index = {static_cast<int>(i), -1, -1};
                info->vertices = {{match.theta, match.theta, match.theta}};
                info->lambdas = Eigen::Vector3d(1.0, 0.0, 0.0);
                info->extrapolation = false;
            }
            return match.data;
        }
    }

    const std::array<int, 3> triangle = find_triangle(db, theta);
    const std::array<ParamCouple, 3> vertices = {
        {db.samples[static_cast<std::size_t>(triangle[0])].theta,
         db.samples[static_cast<std::size_t>(triangle[1])].theta,
         db.samples[static_cast<std::size_t>(triangle[2])].theta}};
    const Eigen::Vector3d lambdas = barycentric_coords(vertices, theta);

    const SnapshotSet& v0 = db.samples[static_cast<std::size_t>(triangle[0])].data;
    const SnapshotSet& v1 = db.samples[static_cast<std::size_t>(triangle[1])].data;
    const SnapshotSet& v2 = db.samples[static_cast<std::size_t>(triangle[2])].data;
    check_compatible(v0, v1, "predict_trajectory");
    check_compatible(v0, v2, "predict_trajectory");

    SnapshotSet predicted;
    predicted.theta = theta;
    predicted.dt = v0.dt;
    predicted.frame = v0.frame;
    predicted.ref_length =
        lambdas[0] * v0.ref_length + lambdas[1] * v1.ref_length + lambdas[2] * v2.ref_length;
    predicted.initial_positions = lambdas[0] * v0.initial_positions +
                                  lambdas[1] * v1.initial_positions +
                                  lambdas[2] * v2.initial_positions;
    predicted.displacements = lambdas[0] * v0.displacements + lambdas[1] * v1.displacements +
                              lambdas[2] * v2.displacements;
    predicted.velocities = lambdas[0] * v0.velocities + lambdas[1] * v1.velocities +
                           lambdas[2] * v2.velocities;

    if (info != nullptr) {
        info->theta = theta;
        info->vertex_index = triangle;
        info->vertices = vertices;
        info->lambdas = lambdas;
        info->extrapolation = lambdas.minCoeff() < -1e-10 || lambdas.maxCoeff() > 1.0 + 1e-10;
    }
    validate(predicted);
    return predicted;
}

RomModel rom_at(const ParamDatabase& db, const ParamCouple& theta, const TrainConfig& config,
                BarycentricQuery* info) {
    const SnapshotSet predicted = predict_trajectory(db, theta, info);
    return train_rom(predicted, config);
}

std::vector<SweepRow> sweep(const ParamDatabase& train, const ParamDatabase& test,
                            const TrainConfig& config) {
    std::vector<std::vector<SweepRow>> per_sample(test.samples.size());
    parallel_for(test.samples.size(), [&](std::size_t i) {
        const SnapshotSet& reference = test.samples[i].data;
        const RomModel model = rom_at(train, test.samples[i].theta, config);

        std::vector<double> times(static_cast<std::size_t>(reference.snapshot_count()));
        for (Eigen::Index j = 0; j < reference.snapshot_count(); ++j) {
            times[static_cast<std::size_t>(j)] = reference.time_of(j);
        }
        const Trajectory trajectory = propagate_exact(model, times);
        const Matrix positions = reconstruct_positions(model, trajectory);
        const metrics::ShapeErrorSeries series =
            metrics::shape_error_series(reference, positions, reference.ref_length);

        per_sample[i].reserve(series.times.size());
        for (std::size_t j = 0; j < series.times.size(); ++j) {
            per_sample[i].push_back(SweepRow{test.samples[i].theta.ca,
                                             test.samples[i].theta.ratio, series.times[j],
                                             series.eps_shape[j]});
        }
    });

    std::vector<SweepRow> rows;
    for (const auto& chunk : per_sample) {
        rows.insert(rows.end(), chunk.begin(), chunk.end());
    }
    return rows;
}

}  // namespace rom::param
