/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/synth.hpp"

#include "rom/error.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace rom::synth {

namespace {

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = normal(rng);
        }
    }
    return m;
}

Matrix orthonormal_columns(const Matrix& raw) {
    const SvdResult svd = thin_svd(raw);
    const double sigma_min = svd.singular_values(svd.singular_values.size() - 1);
    if (!(sigma_min > 1e-10 * svd.singular_values(0))) {
        throw NumericError("synthetic mode construction is rank deficient");
    }
    return svd.u;
}

}  // namespace

LinearOracle make_linear_oracle(Eigen::Index k, Eigen::Index dofs, Eigen::Index snapshots,
                                double dt, SpectrumKind kind, unsigned seed) {
    if (k < 1 || dofs < 3 * ((k + 2) / 3) || dofs % 3 != 0) {
        throw ValidationError("make_linear_oracle: need k >= 1 and dofs a multiple of 3 with "
                              "dofs >= k");
    }
    if (snapshots < k + 1) {
        throw ValidationError("make_linear_oracle: need at least k + 1 snapshots");
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> decay(-1.0, -0.1);
    std::uniform_real_distribution<double> frequency(0.3, 2.0);
    std::uniform_real_distribution<double> center_frequency(0.5, 1.5);

    Matrix blocks = Matrix::Zero(k, k);
    Eigen::Index i = 0;
    if (kind == SpectrumKind::mixed && k >= 2) {
        const double b = center_frequency(rng);
        blocks(0, 1) = b;
        blocks(1, 0) = -b;
        i = 2;
    }
    while (i < k) {
        if (i + 1 < k) {
            const double b = kind == SpectrumKind::center ? center_frequency(rng) : frequency(rng);
            const double a = kind == SpectrumKind::center ? 0.0 : decay(rng);
            blocks(i, i) = a;
            blocks(i + 1, i + 1) = a;
            blocks(i, i + 1) = b;
            blocks(i + 1, i) = -b;
            i += 2;
        } else {
            blocks(i, i) = kind == SpectrumKind::center ? -0.3 : decay(rng);
            i += 1;
        }
    }

    // Mildly non-normal similarity keeps the prescribed spectrum while making
    // the oracle less special than a normal matrix.
    const Matrix v =
        Matrix::Identity(k, k) + 0.25 / std::sqrt(static_cast<double>(k)) * random_gaussian(k, k, rng);
    Eigen::PartialPivLU<Matrix> lu(v);

    LinearOracle oracle;
    oracle.a_ref = v * blocks * lu.inverse();
    oracle.lift = orthonormal_columns(random_gaussian(dofs, k, rng));
    oracle.beta0 = random_gaussian(k, 1, rng).col(0);
    oracle.beta0.normalize();
    oracle.dt = dt;
    oracle.snapshots = snapshots;
    return oracle;
}

SnapshotSet generate_linear(const LinearOracle& oracle) {
    const Eigen::Index k = oracle.a_ref.rows();
    if (oracle.a_ref.cols() != k || oracle.lift.cols() != k || oracle.beta0.size() != k) {
        throw ValidationError("generate_linear: inconsistent oracle shapes");
    }
    if (!(oracle.dt > 0.0) || oracle.snapshots < 1) {
        throw ValidationError("generate_linear: dt must be positive and snapshots >= 1");
    }
    const double ortho =
        (oracle.lift.transpose() * oracle.lift - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (ortho > 1e-10) {
        throw ValidationError("generate_linear: lift columns are not orthonormal");
    }

    // Block system [[0, I], [0, a_ref]]: the exact flow advances the reduced
    // displacement integral and the reduced velocity together, which stays
    // valid when a_ref is singular.
    Matrix block = Matrix::Zero(2 * k, 2 * k);
    block.topRightCorner(k, k) = Matrix::Identity(k, k);
    block.bottomRightCorner(k, k) = oracle.a_ref;
    const Matrix advance = matrix_exponential(block, oracle.dt);

    const Eigen::Index d = oracle.lift.rows();
    SnapshotSet s;
    s.theta = oracle.theta;
    s.dt = oracle.dt;
    s.ref_length = oracle.ref_length;
    s.initial_positions = Vector::Zero(d);
    s.displacements.resize(d, oracle.snapshots);
    s.velocities.resize(d, oracle.snapshots);

    Vector w = Vector::Zero(2 * k);
    w.tail(k) = oracle.beta0;
    for (Eigen::Index n = 0; n < oracle.snapshots; ++n) {
        w = advance * w;
        s.displacements.col(n) = oracle.lift * w.head(k);
        s.velocities.col(n) = oracle.lift * w.tail(k);
    }
    return s;
}

namespace {

// Scalar surface patterns evaluated on unit directions; cycled and multiplied
// by z for mode counts beyond the base set.
double surface_pattern(int index, const Eigen::Vector3d& d) {
    const double x = d.x();
    const double y = d.y();
    const double z = d.z();
    switch (index % 12) {
        case 0: return z;
        case 1: return x;
        case 2: return y;
        case 3: return z * z - 1.0 / 3.0;
        case 4: return x * y;
        case 5: return y * z;
        case 6: return z * x;
        case 7: return x * x - y * y;
        case 8: return z * z * z - 0.6 * z;
        case 9: return (x * x - y * y) * z;
        case 10: return x * y * z;
        case 11: return x * (x * x - 3.0 * y * y);
        default: return 0.0;
    }
}

Eigen::Vector3d direction_pattern(int index, const Eigen::Vector3d& d) {
    switch (index % 3) {
        case 0: return d;                                 // radial
        case 1: return Eigen::Vector3d(0.0, 0.0, 1.0);    // axial
        default: return Eigen::Vector3d(-d.y(), d.x(), 0.0);  // azimuthal, vanishes at poles
    }
}

}  // namespace

SnapshotSet generate_toy_capsule(const ToyCapsuleConfig& config) {
    if (config.n_nodes < 8 || config.snapshots < 2) {
        throw ValidationError("generate_toy_capsule: need n_nodes >= 8 and snapshots >= 2");
    }
    if (!(config.dt > 0.0) || config.substeps < 1) {
        throw ValidationError("generate_toy_capsule: dt must be positive and substeps >= 1");
    }
    if (!(config.ca_like > 0.0) || !(config.ratio_like > 0.0)) {
        throw ValidationError("generate_toy_capsule: ca_like and ratio_like must be positive");
    }
    if (config.amplitude < 0.0 || config.coupling < 0.0) {
        throw ValidationError("generate_toy_capsule: amplitude and coupling must be nonnegative");
    }
    if (!(config.rate_min > 0.0) || !(config.rate_max >= config.rate_min)) {
        throw ValidationError("generate_toy_capsule: need 0 < rate_min <= rate_max");
    }
    const Eigen::Index r = config.n_shape_modes;
    if (r < 1 || r > 24 || config.snapshots <= r + 1) {
        throw ValidationError("generate_toy_capsule: n_shape_modes must lie in [1, 24] and be "
                              "well below the snapshot count");
    }

    if (!(config.freq_min >= 0.0) || !(config.freq_max >= config.freq_min)) {
        throw ValidationError("generate_toy_capsule: need 0 <= freq_min <= freq_max");
    }

    // Explicit two-stage scheme: stability demands h * rate << 2; refuse with a
    // workable substep count instead of producing a blown-up trajectory.
    const double effective_rate =
        std::hypot(config.rate_max, config.freq_max) * (1.0 + 2.0 * config.coupling);
    const double h = config.dt / config.substeps;
    if (h * effective_rate > 0.5) {
        const int suggested = static_cast<int>(std::ceil(config.dt * effective_rate / 0.5));
        throw ValidationError("generate_toy_capsule: internal step " + std::to_string(h) +
                              " exceeds the stability cap for rate " +
                              std::to_string(effective_rate) + "; use substeps >= " +
                              std::to_string(suggested));
    }

    const Eigen::Index n = config.n_nodes;
    const Eigen::Index d = 3 * n;

    // Fibonacci sphere of unit directions; initial shape is the sphere of
    // radius ratio_like (the reference length is 1).
    Matrix directions(3, n);
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * static_cast<double>(i);
        directions.col(i) = Eigen::Vector3d(radius * std::cos(phi), radius * std::sin(phi), z);
    }
    Vector initial_positions(d);
    for (Eigen::Index i = 0; i < n; ++i) {
        initial_positions.segment<3>(3 * i) = config.ratio_like * directions.col(i);
    }

    // Smooth deformation mode shapes, seeded mixing, then orthonormalized.
    std::mt19937 rng(config.seed);
    Matrix raw(d, r);
    for (Eigen::Index m = 0; m < r; ++m) {
        const int idx = static_cast<int>(m);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Vector3d dir = directions.col(i);
            double value = surface_pattern(idx, dir);
            if (idx >= 12) {
                value *= dir.z();
            }
            raw.block<3, 1>(3 * i, m) = value * direction_pattern(idx, dir);
        }
    }
    raw *= Matrix::Identity(r, r) + 0.1 * random_gaussian(r, r, rng) / std::sqrt(static_cast<double>(r));
    const Matrix modes = orthonormal_columns(raw);

    // Steady deformation amplitudes, geometric decay across modes, smoothly
    // (affinely) parameterized by the couple (ca_like, ratio_like).
    const double delta_ca = (config.ca_like - 0.17) / 0.17;
    const double delta_ratio = (config.ratio_like - 0.8) / 0.8;
    const double node_scale = std::sqrt(static_cast<double>(n));
    const double decay = r > 1 ? std::pow(0.85, 1.0 / static_cast<double>(r - 1)) : 1.0;
    Vector steady_coeff(r);
    for (Eigen::Index m = 0; m < r; ++m) {
        const double k = static_cast<double>(m);
        const double theta_factor =
            1.0 + 0.6 * std::cos(1.7 * k + 0.3) * delta_ca + 0.5 * std::sin(1.3 * k + 0.4) * delta_ratio;
        steady_coeff(m) = config.amplitude * std::pow(decay, k) * theta_factor * node_scale;
    }

    // Reduced relaxation operator: damped oscillator pairs with distinct rates
    // and frequencies (a trailing odd mode decays monotonically).  Distinct
    // frequencies keep the mode time profiles independent, so the data does
    // not collapse onto a few principal directions.
    const Eigen::Index pairs = r / 2;
    Matrix relax = Matrix::Zero(r, r);
    for (Eigen::Index p = 0; p < pairs; ++p) {
        const double f = pairs > 1 ? static_cast<double>(p) / static_cast<double>(pairs - 1) : 0.0;
        const double rate = config.rate_min * std::pow(config.rate_max / config.rate_min, f);
        const double freq = config.freq_min + f * (config.freq_max - config.freq_min);
        relax(2 * p, 2 * p) = -rate;
        relax(2 * p + 1, 2 * p + 1) = -rate;
        relax(2 * p, 2 * p + 1) = freq;
        relax(2 * p + 1, 2 * p) = -freq;
    }
    if (r % 2 == 1) {
        relax(r - 1, r - 1) = -config.rate_max;
    }

    const Matrix coupling_matrix =
        random_gaussian(r, r, rng) / std::sqrt(static_cast<double>(r));
    const double coupling_scale = std::max(steady_coeff.norm(), 1e-30);

    const Vector steady_shape = modes * steady_coeff;
    Vector translation_field = Vector::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i) {
        translation_field(3 * i + 2) = config.translation_speed;
    }

    // Full-order right-hand side: contractive relaxation toward the steady
    // shape, evaluated in node space the way an external solver would see it.
    const auto rhs = [&](const Vector& shape) -> Vector {
        const Vector c = modes.transpose() * (shape - steady_shape);
        Vector cdot = relax * c;
        if (config.coupling > 0.0) {
            cdot += config.coupling / coupling_scale *
                    (relax * c.cwiseProduct(coupling_matrix * c));
        }
        return modes * cdot;
    };

    SnapshotSet s;
    s.theta = ParamCouple{config.ca_like, config.ratio_like};
    s.dt = config.dt;
    s.ref_length = 1.0;
    s.initial_positions = initial_positions;
    s.displacements.resize(d, config.snapshots);
    s.velocities.resize(d, config.snapshots);

    Vector shape = Vector::Zero(d);
    for (Eigen::Index snap = 0; snap < config.snapshots; ++snap) {
        for (int sub = 0; sub < config.substeps; ++sub) {
            shape = ralston_step(rhs, shape, h);
        }
        const double t = static_cast<double>(snap + 1) * config.dt;
        s.displacements.col(snap) = shape + t * translation_field;
        s.velocities.col(snap) = rhs(shape) + translation_field;
    }
    return s;
}

}  // namespace rom::synth
