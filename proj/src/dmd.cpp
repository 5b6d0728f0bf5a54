/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/dmd.hpp"

#include "rom/error.hpp"
#include "rom/parallel.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rom::dmd {

ReducedData assemble_reduced_data(const SnapshotSet& s, const pod::PodBasis& basis) {
    if (basis.modes.rows() != s.dofs()) {
        throw ValidationError("assemble_reduced_data: basis dimension " +
                              std::to_string(basis.modes.rows()) +
                              " does not match snapshot dimension " + std::to_string(s.dofs()));
    }
    const Eigen::Index k = basis.rank;
    const Eigen::Index n = s.snapshot_count();
    if (n <= k) {
        throw ValidationError("assemble_reduced_data: insufficient data, N = " +
                              std::to_string(n) + " snapshots but N >= K + 1 = " +
                              std::to_string(k + 1) + " required");
    }

    const Matrix betas = basis.modes.transpose() * s.velocities;  // K x N

    ReducedData data;
    data.dt = s.dt;
    data.x = betas.leftCols(n - 1);
    data.y = (betas.rightCols(n - 1) - betas.leftCols(n - 1)) / s.dt;

    const SvdResult svd = thin_svd(data.x);
    const double sigma_max = svd.singular_values(0);
    const double sigma_min = svd.singular_values(svd.singular_values.size() - 1);
    if (!(sigma_min > 1e-12 * sigma_max)) {
        throw NumericError("assemble_reduced_data: reduced data matrix is rank deficient "
                           "(sigma_min/sigma_max = " +
                           std::to_string(sigma_max > 0 ? sigma_min / sigma_max : 0.0) +
                           "); consider a smaller truncation rank");
    }
    data.cond_x = sigma_max / sigma_min;
    data.cond_xxt = data.cond_x * data.cond_x;
    return data;
}

Matrix identify_plain(const ReducedData& data) {
    return data.y * qr_pseudo_inverse(data.x);
}

Matrix identify_plain_backward(const ReducedData& data) {
    // The backward residual uses the next-step states beta^{n+1} = x + dt * y.
    const Matrix x_next = data.x + data.dt * data.y;
    return data.y * qr_pseudo_inverse(x_next);
}

IdentifiedModel identify_tikhonov(const ReducedData& data, double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw ValidationError("identify_tikhonov: mu must be nonnegative and finite");
    }
    const Eigen::Index k = data.x.rows();
    const double scale = data.x.squaredNorm();  // |x|_F^2, the scaling factor of the penalty
    const Matrix gram = data.x * data.x.transpose() +
                        (mu * scale) * Matrix::Identity(k, k);

    Matrix z;
    try {
        z = solve_spd(gram, data.x * data.y.transpose());
    } catch (const NumericError&) {
        throw NumericError("identify_tikhonov: regularized system is singular (mu = " +
                           std::to_string(mu) + " with rank-deficient data)");
    }

    IdentifiedModel model;
    model.a_mu = z.transpose();
    model.mu = mu;
    model.norm_fro = model.a_mu.norm();
    const double y_norm = data.y.norm();
    model.residual_fro =
        y_norm > 0.0 ? (data.y - model.a_mu * data.x).norm() / y_norm : 0.0;
    model.spectrum = eigenvalues(model.a_mu);
    model.symmetric_part_spectrum =
        eigenvalues(0.5 * (model.a_mu + model.a_mu.transpose()));
    return model;
}

namespace {

// Signed curvature of the circle through three points; counterclockwise
// travel is positive.  Near-coincident points count as flat.
double signed_curvature(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                        const Eigen::Vector2d& p2) {
    const Eigen::Vector2d d01 = p1 - p0;
    const Eigen::Vector2d d12 = p2 - p1;
    const double a = d01.norm();
    const double b = d12.norm();
    const double c = (p2 - p0).norm();
    if (a < 1e-14 || b < 1e-14 || c < 1e-14) {
        return 0.0;
    }
    const double cross = d01.x() * d12.y() - d01.y() * d12.x();
    return 2.0 * cross / (a * b * c);
}

}  // namespace

LCurve lcurve_sweep(const ReducedData& data, double mu_min, double mu_max,
                    int points_per_decade) {
    if (!(mu_min > 0.0) || !(mu_min < mu_max)) {
        throw ValidationError("lcurve_sweep: need 0 < mu_min < mu_max");
    }
    if (points_per_decade < 1) {
        throw ValidationError("lcurve_sweep: points_per_decade must be >= 1");
    }
    const double decades = std::log10(mu_max / mu_min);
    const int count = static_cast<int>(std::lround(points_per_decade * decades));
    if (count < 3) {
        throw ValidationError("lcurve_sweep: degenerate sweep, fewer than 3 points");
    }

    LCurve curve;
    curve.points.resize(static_cast<std::size_t>(count));
    const double log_min = std::log(mu_min);
    const double log_max = std::log(mu_max);
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        const double mu = std::exp(log_min + f * (log_max - log_min));
        const IdentifiedModel model = identify_tikhonov(data, mu);
        curve.points[i] = LCurve::Point{mu, model.residual_fro, model.norm_fro};
    });
    curve.points.front().mu = mu_min;
    curve.points.back().mu = mu_max;

    // Corner of the L: maximum positive curvature of the log-log polyline.
    // An essentially straight curve has no corner and regularization is not
    // needed, so the smallest mu wins; exact ties also resolve to smaller mu.
    constexpr double kCurvatureFloor = 1e-3;
    constexpr double kLogClamp = 1e-300;
    int best = 0;
    double best_curvature = kCurvatureFloor;
    for (std::size_t i = 1; i + 1 < curve.points.size(); ++i) {
        auto point = [&](std::size_t j) {
            return Eigen::Vector2d(std::log10(std::max(curve.points[j].residual, kLogClamp)),
                                   std::log10(std::max(curve.points[j].norm, kLogClamp)));
        };
        const double kappa = signed_curvature(point(i - 1), point(i), point(i + 1));
        if (kappa > best_curvature) {
            best_curvature = kappa;
            best = static_cast<int>(i);
        }
    }
    curve.selected_index = best;
    curve.selected_mu = curve.points[static_cast<std::size_t>(best)].mu;
    return curve;
}

std::vector<std::pair<double, double>> time_residual(const ReducedData& data,
                                                     const Matrix& a_mu) {
    if (a_mu.rows() != data.x.rows() || a_mu.cols() != data.x.rows()) {
        throw ValidationError("time_residual: coefficient matrix shape does not match data");
    }
    const Matrix residual = a_mu * data.x - data.y;
    std::vector<std::pair<double, double>> series;
    series.reserve(static_cast<std::size_t>(data.x.cols()));
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) {
        const double num = residual.col(j).lpNorm<1>();
        const double den = data.y.col(j).lpNorm<1>();
        double r = 0.0;
        if (den > 0.0) {
            r = num / den;
        } else if (num > 1e-14) {
            r = std::numeric_limits<double>::infinity();
        }
        series.emplace_back(static_cast<double>(j + 1) * data.dt, r);
    }
    return series;
}

}  // namespace rom::dmd
