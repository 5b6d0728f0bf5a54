/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/rom_model.hpp"

#include "rom/error.hpp"

#include <cmath>
#include <string>

namespace rom {

namespace {

Matrix block_system(const Matrix& a_mu) {
    const Eigen::Index k = a_mu.rows();
    Matrix block = Matrix::Zero(2 * k, 2 * k);
    block.topRightCorner(k, k) = Matrix::Identity(k, k);
    block.bottomRightCorner(k, k) = a_mu;
    return block;
}

void check_times(const std::vector<double>& times) {
    if (times.empty()) {
        throw ValidationError("propagate: empty time grid");
    }
    double previous = -1.0;
    for (double t : times) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw ValidationError("propagate: times must be finite and nonnegative");
        }
        if (t <= previous) {
            throw ValidationError("propagate: times must be strictly increasing");
        }
        previous = t;
    }
}

// A grid is treated as uniform when every entry matches t0 + i*h to within
// floating-point noise; propagation then steps with one exponential.
bool uniform_spacing(const std::vector<double>& times, double* step) {
    if (times.size() < 3) {
        if (times.size() == 2) {
            *step = times[1] - times[0];
        }
        return times.size() == 2;
    }
    const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    const double tolerance = 1e-13 * std::max(1.0, std::abs(times.back()));
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expected = times.front() + static_cast<double>(i) * h;
        if (std::abs(times[i] - expected) > tolerance) {
            return false;
        }
    }
    *step = h;
    return true;
}

}  // namespace

RomModel train_rom(const SnapshotSet& s, const TrainConfig& config, TrainReport* report) {
    const pod::PodBasis basis = pod::build_basis(s, config.eps, config.max_modes);
    const dmd::ReducedData data = dmd::assemble_reduced_data(s, basis);

    dmd::IdentifiedModel identification;
    std::optional<dmd::LCurve> lcurve;
    if (config.use_lcurve) {
        lcurve = dmd::lcurve_sweep(data, config.lcurve_min, config.lcurve_max,
                                   config.lcurve_points_per_decade);
        identification = dmd::identify_tikhonov(data, lcurve->selected_mu);
    } else {
        identification = dmd::identify_tikhonov(data, config.mu);
    }

    RomModel model;
    model.basis = basis;
    model.a_mu = identification.a_mu;
    model.mu = identification.mu;
    model.alpha0 = Vector::Zero(basis.rank);
    model.beta0 = basis.modes.transpose() * s.velocities.col(0);
    model.dt_train = s.dt;
    model.initial_positions = s.initial_positions;
    model.ref_length = s.ref_length;
    model.theta = s.theta;
    model.spectrum = identification.spectrum;

    if (report != nullptr) {
        report->cond_x = data.cond_x;
        report->cond_xxt = data.cond_xxt;
        report->identification = identification;
        report->lcurve = lcurve;
        report->time_residual = dmd::time_residual(data, model.a_mu);
        const double v_energy = s.velocities.squaredNorm();
        const double captured = (basis.modes.transpose() * s.velocities).squaredNorm();
        report->velocity_ric = v_energy > 0.0 ? std::max(0.0, 1.0 - captured / v_energy) : 0.0;
    }
    return model;
}

Trajectory propagate_exact(const RomModel& m, const std::vector<double>& times) {
    check_times(times);
    const Eigen::Index k = m.rank();
    const Matrix block = block_system(m.a_mu);
    Vector w0(2 * k);
    w0.head(k) = m.alpha0;
    w0.tail(k) = m.beta0;

    Trajectory trajectory;
    trajectory.times = times;
    trajectory.alphas.resize(k, static_cast<Eigen::Index>(times.size()));
    trajectory.betas.resize(k, static_cast<Eigen::Index>(times.size()));

    double h = 0.0;
    if (uniform_spacing(times, &h) && h > 0.0) {
        const Matrix advance = matrix_exponential(block, h);
        Vector w = matrix_exponential(block, times.front()) * w0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            trajectory.alphas.col(static_cast<Eigen::Index>(i)) = w.head(k);
            trajectory.betas.col(static_cast<Eigen::Index>(i)) = w.tail(k);
            w = advance * w;
        }
    } else {
        for (std::size_t i = 0; i < times.size(); ++i) {
            const Vector w = matrix_exponential(block, times[i]) * w0;
            trajectory.alphas.col(static_cast<Eigen::Index>(i)) = w.head(k);
            trajectory.betas.col(static_cast<Eigen::Index>(i)) = w.tail(k);
        }
    }
    return trajectory;
}

Trajectory propagate_euler(const RomModel& m, double dt, Eigen::Index steps) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("propagate_euler: dt must be positive and finite");
    }
    if (steps < 0) {
        throw ValidationError("propagate_euler: negative step count");
    }
    const Eigen::Index k = m.rank();
    Trajectory trajectory;
    trajectory.times.resize(static_cast<std::size_t>(steps) + 1);
    trajectory.alphas.resize(k, steps + 1);
    trajectory.betas.resize(k, steps + 1);

    Vector alpha = m.alpha0;
    Vector beta = m.beta0;
    for (Eigen::Index n = 0; n <= steps; ++n) {
        trajectory.times[static_cast<std::size_t>(n)] = static_cast<double>(n) * dt;
        trajectory.alphas.col(n) = alpha;
        trajectory.betas.col(n) = beta;
        alpha += dt * beta;
        beta += dt * (m.a_mu * beta);
    }
    return trajectory;
}

DiscreteStabilityReport discrete_stability(const RomModel& m, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("discrete_stability: dt must be positive and finite");
    }
    const Eigen::Index k = m.rank();
    const Spectrum amplification =
        eigenvalues(Matrix::Identity(k, k) + dt * m.a_mu);
    double radius = 0.0;
    for (Eigen::Index i = 0; i < amplification.size(); ++i) {
        radius = std::max(radius, std::abs(amplification(i)));
    }
    return DiscreteStabilityReport{dt, radius, radius <= 1.0 + 1e-10};
}

ContinuousStabilityReport continuous_stability(const RomModel& m) {
    ContinuousStabilityReport report;
    report.max_real_part = max_real_part(m.spectrum);
    report.min_abs_eigenvalue = min_abs_eigenvalue(m.spectrum);
    report.dissipative = report.max_real_part <= 1e-9;
    return report;
}

double kinetic_energy_rate(const RomModel& m, const Vector& beta) {
    if (beta.size() != m.rank()) {
        throw ValidationError("kinetic_energy_rate: reduced state length mismatch");
    }
    const Matrix symmetric_part = 0.5 * (m.a_mu + m.a_mu.transpose());
    return beta.dot(symmetric_part * beta);
}

Vector reconstruct_shape(const RomModel& m, const Vector& alpha) {
    if (alpha.size() != m.rank()) {
        throw ValidationError("reconstruct_shape: reduced state length mismatch");
    }
    return m.initial_positions + m.basis.modes * alpha;
}

Matrix reconstruct_positions(const RomModel& m, const Trajectory& trajectory) {
    Matrix positions = m.basis.modes * trajectory.alphas;
    positions.colwise() += m.initial_positions;
    return positions;
}

RomRecord to_record(const RomModel& m) {
    RomRecord record;
    record.theta = m.theta;
    record.modes = m.basis.modes;
    record.a_mu = m.a_mu;
    record.mu = m.mu;
    record.eps = m.basis.eps;
    record.dt = m.dt_train;
    record.alpha0 = m.alpha0;
    record.beta0 = m.beta0;
    record.initial_positions = m.initial_positions;
    record.ref_length = m.ref_length;
    return record;
}

RomModel from_record(const RomRecord& r) {
    validate(r);
    RomModel model;
    model.basis.modes = r.modes;
    model.basis.rank = r.rank();
    model.basis.eps = r.eps;
    model.a_mu = r.a_mu;
    model.mu = r.mu;
    model.alpha0 = r.alpha0;
    model.beta0 = r.beta0;
    model.dt_train = r.dt;
    model.initial_positions = r.initial_positions;
    model.ref_length = r.ref_length;
    model.theta = r.theta;
    model.spectrum = eigenvalues(r.a_mu);
    return model;
}

}  // namespace rom
