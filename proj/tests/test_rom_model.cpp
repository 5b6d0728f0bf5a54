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
#include "rom/synth.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using rom::Matrix;
using rom::RomModel;
using rom::Trajectory;
using rom::Vector;

namespace {

RomModel model_with(const Matrix& a_mu, const Vector& beta0) {
    const Eigen::Index k = a_mu.rows();
    const Eigen::Index d = 3 * (k + 2);
    RomModel m;
    m.basis.modes = testutil::random_orthonormal(d, k, 2024);
    m.basis.rank = k;
    m.basis.eps = 1e-6;
    m.a_mu = a_mu;
    m.mu = 1e-9;
    m.alpha0 = Vector::Zero(k);
    m.beta0 = beta0;
    m.dt_train = 0.04;
    m.initial_positions = testutil::gaussian(d, 1, 2025).col(0);
    m.ref_length = 1.0;
    m.theta = rom::ParamCouple{0.17, 0.8};
    m.spectrum = rom::eigenvalues(a_mu);
    return m;
}

}  // namespace

TEST_CASE("propagate_exact: pure translation") {
    const RomModel m = model_with(Matrix::Zero(2, 2), Vector::Unit(2, 0));
    const Trajectory traj = rom::propagate_exact(m, {1.0, 2.0});
    CHECK((traj.alphas.col(1) - 2.0 * Vector::Unit(2, 0)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((traj.betas.col(1) - Vector::Unit(2, 0)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("propagate_exact: scalar closed form") {
    Matrix a(1, 1);
    a << -1.0;
    const RomModel m = model_with(a, Vector::Ones(1));
    std::vector<double> times;
    for (int i = 1; i <= 50; ++i) {
        times.push_back(0.1 * i);
    }
    const Trajectory traj = rom::propagate_exact(m, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        CHECK(traj.betas(0, static_cast<Eigen::Index>(i)) ==
              doctest::Approx(std::exp(-t)).epsilon(1e-11));
        CHECK(traj.alphas(0, static_cast<Eigen::Index>(i)) ==
              doctest::Approx(1.0 - std::exp(-t)).epsilon(1e-11));
    }
}

TEST_CASE("propagate_exact: nonuniform grids agree with uniform evaluation") {
    const Matrix a = testutil::random_stable(4, 301);
    const RomModel m = model_with(a, testutil::gaussian(4, 1, 302).col(0));
    const Trajectory uniform = rom::propagate_exact(m, {0.5, 1.0, 1.5, 2.0});
    const Trajectory scattered = rom::propagate_exact(m, {0.5, 0.9, 1.5, 3.7});
    CHECK((uniform.betas.col(2) - scattered.betas.col(2)).norm() <= 1e-11);
    CHECK((uniform.alphas.col(0) - scattered.alphas.col(0)).norm() <= 1e-11);
}

TEST_CASE("propagate_exact: time grid validation") {
    const RomModel m = model_with(Matrix::Zero(1, 1), Vector::Ones(1));
    CHECK_THROWS_AS(rom::propagate_exact(m, {}), rom::ValidationError);
    CHECK_THROWS_AS(rom::propagate_exact(m, {1.0, 0.5}), rom::ValidationError);
    CHECK_THROWS_AS(rom::propagate_exact(m, {-1.0, 0.5}), rom::ValidationError);
}

TEST_CASE("propagate_euler: single-step arithmetic and zero-operator case") {
    Matrix a(1, 1);
    a << -1.0;
    const RomModel m = model_with(a, Vector::Ones(1));
    const Trajectory traj = rom::propagate_euler(m, 0.1, 1);
    CHECK(traj.betas(0, 1) == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(traj.alphas(0, 1) == doctest::Approx(0.1).epsilon(1e-14));

    const RomModel free = model_with(Matrix::Zero(2, 2), Vector::Unit(2, 1));
    const Trajectory euler = rom::propagate_euler(free, 0.04, 250);
    std::vector<double> times(euler.times.begin() + 1, euler.times.end());
    const Trajectory exact = rom::propagate_exact(free, times);
    CHECK((euler.alphas.rightCols(250) - exact.alphas).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((euler.betas.rightCols(250) - exact.betas).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("propagate_euler: kinematic consistency to machine precision") {
    const Matrix a = testutil::random_stable(5, 311);
    const RomModel m = model_with(a, testutil::gaussian(5, 1, 312).col(0));
    const double dt = 0.04;
    const Trajectory traj = rom::propagate_euler(m, dt, 250);
    for (Eigen::Index n = 0; n + 1 < traj.alphas.cols(); ++n) {
        const Vector lhs = traj.alphas.col(n + 1);
        const Vector rhs = traj.alphas.col(n) + dt * traj.betas.col(n);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    }
    // The reconstructed fields inherit the identity through the linear map.
    const Matrix positions = rom::reconstruct_positions(m, traj);
    const Matrix velocity_fields = m.basis.modes * traj.betas;
    for (Eigen::Index n = 0; n + 1 < positions.cols(); ++n) {
        const Vector lhs = positions.col(n + 1) - positions.col(n);
        const Vector rhs = dt * velocity_fields.col(n);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("propagate_euler: first-order convergence toward the exact flow") {
    const Matrix a = testutil::random_stable(4, 321);
    const RomModel m = model_with(a, testutil::gaussian(4, 1, 322).col(0));
    const double horizon = 1.0;
    const Trajectory reference = rom::propagate_exact(m, {horizon});

    std::vector<double> errors;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
        const auto steps = static_cast<Eigen::Index>(std::llround(horizon / dt));
        const Trajectory euler = rom::propagate_euler(m, dt, steps);
        errors.push_back((euler.betas.col(steps) - reference.betas.col(0)).norm());
    }
    const double order01 = std::log2(errors[0] / errors[1]);
    const double order12 = std::log2(errors[1] / errors[2]);
    CHECK(order01 == doctest::Approx(1.0).epsilon(0.1));
    CHECK(order12 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("discrete_stability: scalar cases") {
    Matrix a(1, 1);
    a << -1.0;
    const RomModel m = model_with(a, Vector::Ones(1));
    CHECK(rom::discrete_stability(m, 2.5).spectral_radius == doctest::Approx(1.5));
    CHECK_FALSE(rom::discrete_stability(m, 2.5).stable);
    CHECK(rom::discrete_stability(m, 1.0).spectral_radius == doctest::Approx(0.0));
    CHECK(rom::discrete_stability(m, 1.0).stable);

    const RomModel zero = model_with(Matrix::Zero(2, 2), Vector::Ones(2));
    CHECK(rom::discrete_stability(zero, 0.3).spectral_radius == doctest::Approx(1.0));
    CHECK(rom::discrete_stability(zero, 0.3).stable);
}

TEST_CASE("continuous_stability: verdicts") {
    Matrix negdef = -Matrix::Identity(3, 3);
    negdef(0, 1) = 0.2;
    negdef(1, 0) = -0.2;
    CHECK(rom::continuous_stability(model_with(negdef, Vector::Ones(3))).dissipative);

    Matrix unstable = negdef;
    unstable(2, 2) = 0.1;
    const rom::ContinuousStabilityReport report =
        rom::continuous_stability(model_with(unstable, Vector::Ones(3)));
    CHECK_FALSE(report.dissipative);
    CHECK(report.max_real_part == doctest::Approx(0.1));
}

TEST_CASE("kinetic_energy_rate: closed forms and trajectory consistency") {
    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 1) = 2.0;
    skew(1, 0) = -2.0;
    const RomModel rotating = model_with(skew, Vector::Unit(2, 0));
    CHECK(rom::kinetic_energy_rate(rotating, testutil::gaussian(2, 1, 331).col(0)) ==
          doctest::Approx(0.0).epsilon(1e-14));

    const RomModel contracting = model_with(-Matrix::Identity(2, 2), Vector::Unit(2, 0));
    CHECK(rom::kinetic_energy_rate(contracting, Vector::Unit(2, 0)) == doctest::Approx(-1.0));

    // Finite differences of the reduced kinetic energy track the quadratic form.
    Matrix a(1, 1);
    a << -0.8;
    const RomModel scalar = model_with(a, Vector::Ones(1));
    const double dt = 1e-3;
    const Trajectory traj = rom::propagate_euler(scalar, dt, 400);
    for (Eigen::Index n = 0; n + 1 < traj.betas.cols(); ++n) {
        const double e0 = 0.5 * traj.betas.col(n).squaredNorm();
        const double e1 = 0.5 * traj.betas.col(n + 1).squaredNorm();
        const double rate = rom::kinetic_energy_rate(scalar, traj.betas.col(n));
        CHECK(std::abs((e1 - e0) / dt - rate) <= 10.0 * dt);
    }
}

TEST_CASE("energy norm is nonincreasing when the symmetric part is negative") {
    // a = symmetric negative definite + skew perturbation keeps a^S <= 0.
    const Matrix g = testutil::gaussian(4, 4, 341);
    const Matrix sym = -(g * g.transpose()) - 0.1 * Matrix::Identity(4, 4);
    Matrix skew = testutil::gaussian(4, 4, 342);
    skew = 0.5 * (skew - skew.transpose());
    const RomModel m = model_with(sym + skew, testutil::gaussian(4, 1, 343).col(0));

    std::vector<double> times;
    for (int i = 1; i <= 40; ++i) {
        times.push_back(0.05 * i);
    }
    const Trajectory traj = rom::propagate_exact(m, times);
    double previous = m.beta0.norm();
    for (Eigen::Index n = 0; n < traj.betas.cols(); ++n) {
        const double current = traj.betas.col(n).norm();
        CHECK(current <= previous + 1e-9);
        previous = current;
    }
}

TEST_CASE("reconstruct_shape: zero state and linearity") {
    const Matrix a = testutil::random_stable(3, 351);
    const RomModel m = model_with(a, Vector::Ones(3));
    CHECK((rom::reconstruct_shape(m, Vector::Zero(3)) - m.initial_positions).norm() == 0.0);

    const Vector u = testutil::gaussian(3, 1, 352).col(0);
    const Vector v = testutil::gaussian(3, 1, 353).col(0);
    const Vector base = rom::reconstruct_shape(m, Vector::Zero(3));
    const Vector sum = rom::reconstruct_shape(m, u + v) - base;
    const Vector parts =
        (rom::reconstruct_shape(m, u) - base) + (rom::reconstruct_shape(m, v) - base);
    CHECK((sum - parts).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("train_rom: projection round trip reproduces training positions") {
    rom::synth::ToyCapsuleConfig config;
    config.n_nodes = 150;
    config.snapshots = 120;
    const rom::SnapshotSet s = rom::synth::generate_toy_capsule(config);
    rom::TrainReport report;
    const RomModel model = rom::train_rom(s, rom::TrainConfig{}, &report);

    // Projection of every displacement snapshot back through the basis stays
    // within the truncation budget.
    double captured = 0.0;
    for (Eigen::Index j = 0; j < s.snapshot_count(); ++j) {
        const Vector alpha = model.basis.modes.transpose() * s.displacements.col(j);
        const Vector shape = rom::reconstruct_shape(model, alpha);
        const Vector truth = s.initial_positions + s.displacements.col(j);
        captured += (shape - truth).squaredNorm();
    }
    CHECK(captured <= (model.basis.eps + 1e-12) * s.displacements.squaredNorm());
    CHECK(report.cond_x > 1.0);
    CHECK(report.velocity_ric >= 0.0);
    CHECK(model.alpha0.cwiseAbs().maxCoeff() == 0.0);
    CHECK((model.beta0 - model.basis.modes.transpose() * s.velocities.col(0)).norm() == 0.0);
}

TEST_CASE("extrapolation beyond the training window is well-defined") {
    rom::synth::ToyCapsuleConfig config;
    config.n_nodes = 100;
    config.snapshots = 80;  // window ends at t = 3.2
    const rom::SnapshotSet s = rom::synth::generate_toy_capsule(config);
    const RomModel model = rom::train_rom(s, rom::TrainConfig{});
    const Trajectory traj = rom::propagate_exact(model, {1.0, 5.0, 10.0, 20.0});
    CHECK(traj.betas.allFinite());
    CHECK(traj.alphas.allFinite());
}

TEST_CASE("record conversion survives a file round trip") {
    const Matrix a = testutil::random_stable(3, 361);
    const RomModel m = model_with(a, testutil::gaussian(3, 1, 362).col(0));
    const auto path = std::filesystem::temp_directory_path() / "snaprom_tests" / "model.romrec";
    std::filesystem::create_directories(path.parent_path());
    rom::write_rom_record(rom::to_record(m), path);
    const RomModel back = rom::from_record(rom::read_rom_record(path));
    CHECK((back.a_mu - m.a_mu).norm() == 0.0);
    CHECK((back.basis.modes - m.basis.modes).norm() == 0.0);
    CHECK((back.beta0 - m.beta0).norm() == 0.0);
    CHECK(back.rank() == m.rank());

    const Trajectory before = rom::propagate_exact(m, {0.5, 1.0});
    const Trajectory after = rom::propagate_exact(back, {0.5, 1.0});
    CHECK((before.betas - after.betas).norm() == 0.0);
}

TEST_CASE("training defaults are the documented operating point") {
    const rom::TrainConfig config;
    CHECK(config.eps == 1e-6);
    CHECK(config.max_modes == 20);
    CHECK(config.mu == 1e-9);
    CHECK_FALSE(config.use_lcurve);
    CHECK(config.lcurve_min == 1e-12);
    CHECK(config.lcurve_max == 1e-5);
    CHECK(config.lcurve_points_per_decade == 4);
}
