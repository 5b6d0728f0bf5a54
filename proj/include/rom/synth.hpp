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

namespace rom::synth {

/// An exact linear reference system d(beta)/dt = a_ref * beta embedded in node
/// space by a semi-orthogonal lift.  Snapshots are exact flow samples.
struct LinearOracle {
    Matrix a_ref;              ///< K x K
    Matrix lift;               ///< d x K, orthonormal columns
    Vector beta0;              ///< reduced initial velocity state
    double dt = 0.04;
    Eigen::Index snapshots = 250;
    ParamCouple theta{0.17, 0.8};
    double ref_length = 1.0;
};

enum class SpectrumKind { stable, center, mixed };

/// Deterministic random oracle with the requested spectral structure:
/// stable (all real parts negative), center (pure imaginary pairs), or
/// mixed (stable plus one center pair).
LinearOracle make_linear_oracle(Eigen::Index k, Eigen::Index dofs, Eigen::Index snapshots,
                                double dt, SpectrumKind kind, unsigned seed);

/// Exact snapshots of the oracle: velocities are lift * exp(a_ref n dt) * beta0
/// and displacements are the exact time integrals of the velocities, both
/// evaluated through the block matrix exponential (valid for singular a_ref).
SnapshotSet generate_linear(const LinearOracle& oracle);

/// Configuration of the capsule-like verification oracle: a full-order node
/// field relaxing toward a steady deformed shape while translating at constant
/// speed.  This is a verification data generator, not a physics model.
struct ToyCapsuleConfig {
    Eigen::Index n_nodes = 2562;
    Eigen::Index snapshots = 250;
    double dt = 0.04;          ///< snapshot spacing
    double ca_like = 0.17;     ///< smoothly scales the shape deformation
    double ratio_like = 0.8;   ///< sphere radius and deformation scaling
    double amplitude = 0.005;  ///< per-node scale of the relaxing deformation field;
                               ///< zero switches the shape dynamics off entirely
    double coupling = 0.1;     ///< nonlinear mode-coupling strength; zero keeps the
                               ///< reduced dynamics exactly linear
    double translation_speed = 0.01;  ///< steady translation along z
    double rate_min = 0.6;     ///< slowest shape relaxation rate
    double rate_max = 1.5;     ///< fastest shape relaxation rate
    double freq_min = 0.7;     ///< slowest oscillation frequency of the mode pairs
    double freq_max = 1.7;     ///< fastest oscillation frequency of the mode pairs
    Eigen::Index n_shape_modes = 12;
    int substeps = 32;         ///< internal integration steps per snapshot interval
    unsigned seed = 1;
};

/// Integrates the full-order field with the two-stage second-order scheme
/// (stages at 0 and 2/3) at dt / substeps and samples every dt.  Deterministic
/// given config: identical configs produce identical bytes.
SnapshotSet generate_toy_capsule(const ToyCapsuleConfig& config);

/// One step of the two-stage second-order explicit scheme used by the toy
/// generator (stages at 0 and 2/3, weights 1/4 and 3/4).
template <class Rhs>
Vector ralston_step(const Rhs& rhs, const Vector& state, double h) {
    const Vector k1 = rhs(state);
    const Vector k2 = rhs(state + (2.0 / 3.0 * h) * k1);
    return state + h * (0.25 * k1 + 0.75 * k2);
}

}  // namespace rom::synth
