/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/metrics.hpp"

#include "rom/error.hpp"
#include "rom/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace rom::metrics {

namespace {

// Uniform-cell spatial index for exact nearest-neighbor queries.  Cells are
// visited in expanding Chebyshev rings; a ring at distance rho can only hold
// points closer than (rho - 1) * cell, which bounds the search exactly.
class NearestGrid {
  public:
    explicit NearestGrid(const Eigen::Ref<const PointCloud>& points) : points_(points) {
        const Eigen::Index n = points.cols();
        lo_ = points.rowwise().minCoeff();
        const Eigen::Vector3d hi = points.rowwise().maxCoeff();
        const double extent = (hi - lo_).maxCoeff();
        const auto per_axis = static_cast<int>(
            std::max(1.0, std::cbrt(static_cast<double>(n))));
        cell_ = extent > 0.0 ? extent / per_axis : 1.0;
        for (int axis = 0; axis < 3; ++axis) {
            dims_[axis] = std::max<Eigen::Index>(
                1, static_cast<Eigen::Index>((hi[axis] - lo_[axis]) / cell_) + 1);
        }
        cells_.resize(static_cast<std::size_t>(dims_[0] * dims_[1] * dims_[2]));
        for (Eigen::Index i = 0; i < n; ++i) {
            cells_[flat_index(cell_of(points.col(i)))].push_back(static_cast<int>(i));
        }
        max_rings_ = std::max({dims_[0], dims_[1], dims_[2]});
    }

    double nearest_squared(const Eigen::Vector3d& query) const {
        const Eigen::Array3i center = cell_of(query);
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index ring = 0; ring <= max_rings_; ++ring) {
            if (best <= square(static_cast<double>(ring - 1) * cell_)) {
                break;
            }
            scan_ring(center, ring, query, best);
        }
        return best;
    }

  private:
    static double square(double v) { return v * v; }

    Eigen::Array3i cell_of(const Eigen::Vector3d& p) const {
        Eigen::Array3i cell;
        for (int axis = 0; axis < 3; ++axis) {
            const auto raw = static_cast<Eigen::Index>(
                std::floor((p[axis] - lo_[axis]) / cell_));
            cell[axis] = static_cast<int>(std::clamp<Eigen::Index>(raw, 0, dims_[axis] - 1));
        }
        return cell;
    }

    std::size_t flat_index(const Eigen::Array3i& cell) const {
        return static_cast<std::size_t>((cell[2] * dims_[1] + cell[1]) * dims_[0] + cell[0]);
    }

    void scan_cell(int cx, int cy, int cz, const Eigen::Vector3d& query, double& best) const {
        if (cx < 0 || cy < 0 || cz < 0 || cx >= dims_[0] || cy >= dims_[1] || cz >= dims_[2]) {
            return;
        }
        for (int index : cells_[flat_index(Eigen::Array3i(cx, cy, cz))]) {
            best = std::min(best, (points_.col(index) - query).squaredNorm());
        }
    }

    void scan_ring(const Eigen::Array3i& center, Eigen::Index ring, const Eigen::Vector3d& query,
                   double& best) const {
        const int r = static_cast<int>(ring);
        if (r == 0) {
            scan_cell(center[0], center[1], center[2], query, best);
            return;
        }
        for (int dz = -r; dz <= r; ++dz) {
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != r) {
                        continue;
                    }
                    scan_cell(center[0] + dx, center[1] + dy, center[2] + dz, query, best);
                }
            }
        }
    }

    Eigen::Ref<const PointCloud> points_;
    Eigen::Vector3d lo_;
    double cell_ = 1.0;
    Eigen::Array3i dims_{1, 1, 1};
    Eigen::Index max_rings_ = 1;
    std::vector<std::vector<int>> cells_;
};

double directed_mean_nearest(const Eigen::Ref<const PointCloud>& from,
                             const Eigen::Ref<const PointCloud>& to) {
    double total = 0.0;
    if (to.cols() <= 64) {
        for (Eigen::Index i = 0; i < from.cols(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < to.cols(); ++j) {
                best = std::min(best, (from.col(i) - to.col(j)).squaredNorm());
            }
            total += std::sqrt(best);
        }
    } else {
        const NearestGrid grid(to);
        for (Eigen::Index i = 0; i < from.cols(); ++i) {
            total += std::sqrt(grid.nearest_squared(from.col(i)));
        }
    }
    return total / static_cast<double>(from.cols());
}

}  // namespace

Eigen::Map<const PointCloud> as_point_cloud(const Vector& flat) {
    if (flat.size() % 3 != 0 || flat.size() == 0) {
        throw ValidationError("as_point_cloud: coordinate vector length must be a positive "
                              "multiple of 3");
    }
    return Eigen::Map<const PointCloud>(flat.data(), 3, flat.size() / 3);
}

double modified_hausdorff(const Eigen::Ref<const PointCloud>& a,
                          const Eigen::Ref<const PointCloud>& b) {
    if (a.cols() == 0 || b.cols() == 0) {
        throw ValidationError("modified_hausdorff: point clouds must be nonempty");
    }
    if (!a.allFinite() || !b.allFinite()) {
        throw ValidationError("modified_hausdorff: point clouds must be finite");
    }
    return std::max(directed_mean_nearest(a, b), directed_mean_nearest(b, a));
}

double ShapeErrorSeries::max_eps_shape() const {
    double value = 0.0;
    for (double e : eps_shape) {
        value = std::max(value, e);
    }
    return value;
}

ShapeErrorSeries shape_error_series(const SnapshotSet& fom, const Matrix& rom_positions,
                                    double ref_length) {
    if (rom_positions.rows() != fom.dofs() || rom_positions.cols() != fom.snapshot_count()) {
        throw ValidationError("shape_error_series: time grids differ, expected " +
                              std::to_string(fom.dofs()) + "x" +
                              std::to_string(fom.snapshot_count()) + " positions, got " +
                              std::to_string(rom_positions.rows()) + "x" +
                              std::to_string(rom_positions.cols()));
    }
    if (!(ref_length > 0.0)) {
        throw ValidationError("shape_error_series: ref_length must be positive");
    }

    const Eigen::Index n = fom.snapshot_count();
    ShapeErrorSeries series;
    series.times.resize(static_cast<std::size_t>(n));
    series.eps_shape.resize(static_cast<std::size_t>(n));
    series.rms.resize(static_cast<std::size_t>(n));

    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
        const auto col = static_cast<Eigen::Index>(j);
        const Vector fom_positions = fom.initial_positions + fom.displacements.col(col);
        const auto fom_cloud =
            Eigen::Map<const PointCloud>(fom_positions.data(), 3, fom.node_count());
        const auto rom_cloud =
            Eigen::Map<const PointCloud>(rom_positions.col(col).data(), 3, fom.node_count());
        series.times[j] = fom.time_of(col);
        series.eps_shape[j] = modified_hausdorff(fom_cloud, rom_cloud) / ref_length;
        series.rms[j] = std::sqrt((fom_cloud - rom_cloud).colwise().squaredNorm().mean()) /
                        ref_length;
    });
    return series;
}

std::vector<LearningStudyRow> learning_time_study(const SnapshotSet& s,
                                                  const std::vector<double>& t_learn_values,
                                                  const TrainConfig& config) {
    const Eigen::Index n = s.snapshot_count();
    std::vector<double> full_times(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        full_times[static_cast<std::size_t>(j)] = s.time_of(j);
    }

    std::vector<LearningStudyRow> rows;
    rows.reserve(t_learn_values.size());
    for (double t_learn : t_learn_values) {
        if (!(t_learn > 0.0) || t_learn > s.time_of(n - 1) + 1e-12) {
            throw ValidationError("learning_time_study: learning time " +
                                  std::to_string(t_learn) + " outside the record");
        }
        Eigen::Index prefix = 0;
        while (prefix < n && s.time_of(prefix) <= t_learn + 1e-12) {
            ++prefix;
        }
        if (prefix < 2) {
            throw ValidationError("learning_time_study: insufficient data, learning window "
                                  "holds fewer than 2 snapshots");
        }

        SnapshotSet window = s;
        window.displacements = s.displacements.leftCols(prefix);
        window.velocities = s.velocities.leftCols(prefix);

        const RomModel model = train_rom(window, config);
        const Trajectory trajectory = propagate_exact(model, full_times);
        const Matrix positions = reconstruct_positions(model, trajectory);
        const ShapeErrorSeries series = shape_error_series(s, positions, s.ref_length);
        rows.push_back(LearningStudyRow{t_learn, series.eps_shape.back()});
    }
    return rows;
}

std::optional<double> steady_state_time(const SnapshotSet& s, double tol) {
    const Eigen::Index n = s.snapshot_count();
    Eigen::Index first_stationary = n;
    for (Eigen::Index j = n - 2; j >= 0; --j) {
        const double denom = s.velocities.col(j).norm();
        const double diff = (s.velocities.col(j + 1) - s.velocities.col(j)).norm();
        const bool stationary = denom > 0.0 ? diff / denom <= tol : diff == 0.0;
        if (!stationary) {
            break;
        }
        first_stationary = j;
    }
    if (first_stationary >= n) {
        return std::nullopt;
    }
    return s.time_of(first_stationary);
}

}  // namespace rom::metrics
