/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#pragma once

#include "rom/dmd.hpp"
#include "rom/linalg.hpp"
#include "rom/pod.hpp"
#include "rom/snapshot.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace rom {

/// The identified reduced-order dynamical system
///   d(alpha)/dt = beta,   d(beta)/dt = a_mu * beta,
/// with alpha(0) = 0 and beta(0) taken from the first stored velocity snapshot.
struct RomModel {
    pod::PodBasis basis;
    Matrix a_mu;
    double mu = 0.0;
    Vector alpha0;             ///< always the zero vector
    Vector beta0;
    double dt_train = 0.0;
    Vector initial_positions;  ///< reference node positions {X}
    double ref_length = 1.0;
    ParamCouple theta;
    Spectrum spectrum;         ///< eigenvalues of a_mu

    Eigen::Index rank() const { return a_mu.rows(); }
};

/// Reduced trajectory samples at strictly increasing times.
struct Trajectory {
    std::vector<double> times;
    Matrix alphas;  ///< K x M
    Matrix betas;   ///< K x M
};

/// Training configuration; the defaults are the operating point used
/// throughout the validation scenarios.
struct TrainConfig {
    double eps = 1e-6;
    Eigen::Index max_modes = 20;
    double mu = 1e-9;
    bool use_lcurve = false;
    double lcurve_min = 1e-12;
    double lcurve_max = 1e-5;
    int lcurve_points_per_decade = 4;
};

/// Identification diagnostics surfaced by train_rom.
struct TrainReport {
    double cond_x = 0.0;
    double cond_xxt = 0.0;
    dmd::IdentifiedModel identification;
    std::optional<dmd::LCurve> lcurve;
    std::vector<std::pair<double, double>> time_residual;
    double velocity_ric = 0.0;  ///< projection energy of the velocities missed by the basis
};

/// Full identification pipeline: POD truncation, reduced data assembly,
/// Tikhonov identification (optionally L-curve selected).
RomModel train_rom(const SnapshotSet& s, const TrainConfig& config,
                   TrainReport* report = nullptr);

/// Propagation by the exact exponential of the block matrix
/// [[0, I], [0, a_mu]]; times must be nonnegative and strictly increasing.
Trajectory propagate_exact(const RomModel& m, const std::vector<double>& times);

/// Explicit forward Euler propagation with constant step dt; the returned
/// trajectory holds steps + 1 states starting at t = 0.
Trajectory propagate_euler(const RomModel& m, double dt, Eigen::Index steps);

struct DiscreteStabilityReport {
    double dt = 0.0;
    double spectral_radius = 0.0;  ///< of I + dt * a_mu
    bool stable = false;           ///< radius <= 1 + 1e-10
};
DiscreteStabilityReport discrete_stability(const RomModel& m, double dt);

struct ContinuousStabilityReport {
    double max_real_part = 0.0;      ///< over the spectrum of a_mu
    double min_abs_eigenvalue = 0.0; ///< steady-state consistency indicator
    bool dissipative = false;        ///< max real part <= 1e-9
};
ContinuousStabilityReport continuous_stability(const RomModel& m);

/// Instantaneous rate of the reduced kinetic energy (1/2)|beta|^2, which is
/// beta^T (a_mu + a_mu^T)/2 beta along solutions.
double kinetic_energy_rate(const RomModel& m, const Vector& beta);

/// Node positions {X} + modes * alpha for one reduced displacement state.
Vector reconstruct_shape(const RomModel& m, const Vector& alpha);

/// Node positions for every trajectory column, as a d x M matrix.
Matrix reconstruct_positions(const RomModel& m, const Trajectory& trajectory);

/// Conversions to and from the persisted record form.
RomRecord to_record(const RomModel& m);
RomModel from_record(const RomRecord& r);

}  // namespace rom
