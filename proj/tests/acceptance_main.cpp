/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits with the number of failed criteria.

#include "rom/dmd.hpp"
#include "rom/error.hpp"
#include "rom/linalg.hpp"
#include "rom/metrics.hpp"
#include "rom/param_space.hpp"
#include "rom/pod.hpp"
#include "rom/rom_model.hpp"
#include "rom/snapshot.hpp"
#include "rom/synth.hpp"
#include "helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using rom::Matrix;
using rom::Vector;
using Clock = std::chrono::steady_clock;

struct Result {
    bool pass = false;
    std::string detail;
};

double seconds_since(const Clock::time_point& start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3g", value);
    return buffer;
}

// Shared end-to-end artifacts: the reference toy capsule at the default
// operating point (2562 nodes, N = 250, dt = 0.04, K cap 20, mu = 1e-9).
struct SharedState {
    rom::SnapshotSet capsule;
    rom::RomModel model;
    double generation_seconds = 0.0;
    std::vector<double> times;
};

SharedState make_shared_state() {
    SharedState state;
    const rom::synth::ToyCapsuleConfig config;  // defaults are the operating point
    const auto start = Clock::now();
    state.capsule = rom::synth::generate_toy_capsule(config);
    state.generation_seconds = seconds_since(start);
    state.model = rom::train_rom(state.capsule, rom::TrainConfig{});
    for (Eigen::Index j = 0; j < state.capsule.snapshot_count(); ++j) {
        state.times.push_back(state.capsule.time_of(j));
    }
    return state;
}

// --- 1: exact recovery of the forward-difference map --------------------------
Result criterion_exact_recovery() {
    const auto start = Clock::now();
    const double dt = 0.04;
    double worst = 0.0;
    for (unsigned trial = 0; trial < 20; ++trial) {
        const Eigen::Index k = 3 + static_cast<Eigen::Index>(trial % 10);  // up to 12
        const Matrix a_ref = testutil::random_stable(k, 1000 + trial, 1.0, 6.5);
        const Vector beta0 = testutil::gaussian(k, 1, 2000 + trial).col(0);
        const Matrix betas = testutil::exact_reduced_snapshots(a_ref, beta0, dt, 100);
        const Matrix identified =
            rom::dmd::identify_plain(testutil::reduced_data_from_betas(betas, dt));
        const Matrix expected =
            (rom::matrix_exponential(a_ref, dt) - Matrix::Identity(k, k)) / dt;
        worst = std::max(worst, (identified - expected).norm());
    }
    const double elapsed = seconds_since(start);
    return Result{worst <= 1e-8 && elapsed < 5.0,
                  "max Frobenius error " + format(worst) + ", " + format(elapsed) + " s"};
}

// --- 2: forward/backward discretization dichotomy on a center ----------------
Result criterion_stability_dichotomy() {
    const double b = 1.0;
    Matrix center = Matrix::Zero(2, 2);
    center(0, 1) = b;
    center(1, 0) = -b;
    Vector beta0(2);
    beta0 << 1.0, 0.4;

    bool pass = true;
    std::ostringstream detail;
    for (double dt : {0.1, 0.01, 0.001}) {
        const Matrix betas = testutil::exact_reduced_snapshots(center, beta0, dt, 500);
        const rom::dmd::ReducedData data = testutil::reduced_data_from_betas(betas, dt);
        const double forward =
            rom::max_real_part(rom::eigenvalues(rom::dmd::identify_plain(data)));
        const double backward =
            rom::max_real_part(rom::eigenvalues(rom::dmd::identify_plain_backward(data)));
        pass = pass && forward < 0.0 && backward > 0.0;
        if (dt == 0.001) {
            const double predicted = dt * b * b / 2.0;
            pass = pass && std::abs(forward + predicted) <= 0.2 * predicted &&
                   std::abs(backward - predicted) <= 0.2 * predicted;
            detail << "at dt=0.001: forward " << format(forward) << ", backward "
                   << format(backward) << " vs +/-" << format(predicted);
        }
    }
    return Result{pass, detail.str()};
}

// --- 3: POD truncation bound and minimality ----------------------------------
Result criterion_pod_bound() {
    const double eps = 1e-6;
    bool pass = true;
    double worst_ratio = 0.0;
    for (unsigned trial = 0; trial < 50; ++trial) {
        const Eigen::Index d = 3 * (8 + static_cast<Eigen::Index>(trial % 12));
        const Eigen::Index n = 12 + static_cast<Eigen::Index>((trial * 7) % 20);
        const Eigen::Index r = std::min(d, n);
        Vector sigma(r);
        for (Eigen::Index i = 0; i < r; ++i) {
            sigma(i) = std::pow(10.0, -9.0 * static_cast<double>(i) / (r - 1));
        }
        rom::SnapshotSet s;
        s.theta = rom::ParamCouple{0.17, 0.8};
        s.dt = 0.04;
        s.ref_length = 1.0;
        s.initial_positions = Vector::Zero(d);
        s.displacements = testutil::random_orthonormal(d, r, 3000 + trial) *
                          sigma.asDiagonal() *
                          testutil::random_orthonormal(n, r, 4000 + trial).transpose();
        s.velocities = Matrix::Zero(d, n);

        const rom::pod::PodBasis basis = rom::pod::build_basis(s, eps, r);
        const Matrix projected = basis.modes * (basis.modes.transpose() * s.displacements);
        const double ratio =
            (s.displacements - projected).squaredNorm() / s.displacements.squaredNorm();
        worst_ratio = std::max(worst_ratio, ratio);
        pass = pass && ratio <= eps + 1e-12;

        const auto ric = rom::pod::ric_from_singular_values(basis.singular_values);
        pass = pass && ric[static_cast<std::size_t>(basis.rank - 1)] <= eps;
        if (basis.rank > 1) {
            pass = pass && ric[static_cast<std::size_t>(basis.rank - 2)] > eps;
        }
    }
    return Result{pass, "worst projection energy ratio " + format(worst_ratio)};
}

// --- 4: Tikhonov vanishing limit and ridge monotonicity -----------------------
Result criterion_tikhonov_limits() {
    const Matrix a_ref = testutil::random_stable(6, 501);
    const Vector beta0 = testutil::gaussian(6, 1, 502).col(0);
    const Matrix betas = testutil::exact_reduced_snapshots(a_ref, beta0, 0.04, 60);
    const rom::dmd::ReducedData data = testutil::reduced_data_from_betas(betas, 0.04);

    const Matrix plain = rom::dmd::identify_plain(data);
    const Matrix a_mu = rom::dmd::identify_tikhonov(data, 1e-14).a_mu;
    const double limit_gap = (a_mu - plain).norm() / plain.norm();
    bool pass = limit_gap <= 1e-6;

    const rom::dmd::LCurve curve = rom::dmd::lcurve_sweep(data, 1e-12, 1e-5, 4);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        pass = pass && curve.points[i].norm <= curve.points[i - 1].norm + 1e-12;
    }
    return Result{pass, "limit gap " + format(limit_gap) + ", sweep of " +
                            std::to_string(curve.points.size()) + " points monotone"};
}

// --- 5: kinematic consistency and first-order agreement ----------------------
Result criterion_kinematics(const SharedState& state) {
    const double dt = 0.04;
    const rom::Trajectory euler = rom::propagate_euler(state.model, dt, 250);
    double worst = 0.0;
    for (Eigen::Index n = 0; n + 1 < euler.alphas.cols(); ++n) {
        const Vector gap =
            euler.alphas.col(n + 1) - euler.alphas.col(n) - dt * euler.betas.col(n);
        worst = std::max(worst, gap.cwiseAbs().maxCoeff());
    }
    bool pass = worst <= 1e-12;

    // Order of convergence of Euler toward the exact propagator.
    const double horizon = 1.0;
    const rom::Trajectory reference = rom::propagate_exact(state.model, {horizon});
    std::vector<double> errors;
    for (double h : {0.01, 0.005, 0.0025}) {
        const auto steps = static_cast<Eigen::Index>(std::llround(horizon / h));
        const rom::Trajectory approx = rom::propagate_euler(state.model, h, steps);
        errors.push_back((approx.betas.col(steps) - reference.betas.col(0)).norm());
    }
    const double order = std::log2(errors[0] / errors[1]);
    const double order2 = std::log2(errors[1] / errors[2]);
    pass = pass && std::abs(order - 1.0) <= 0.1 && std::abs(order2 - 1.0) <= 0.1;
    return Result{pass, "max kinematic gap " + format(worst) + ", observed orders " +
                            format(order) + ", " + format(order2)};
}

// --- 6: steady-state spectral consistency -------------------------------------
Result criterion_steady_spectrum() {
    rom::synth::ToyCapsuleConfig config;
    config.n_nodes = 800;
    config.coupling = 0.0;      // exactly linear reduced dynamics
    config.n_shape_modes = 8;   // well-separated mode profiles
    config.freq_min = 0.7;
    config.freq_max = 3.5;
    const rom::SnapshotSet s = rom::synth::generate_toy_capsule(config);

    rom::TrainConfig train;
    train.eps = 1e-10;  // retain the full trajectory rank so the steady mode survives
    const rom::RomModel model = rom::train_rom(s, train);
    const rom::ContinuousStabilityReport report = rom::continuous_stability(model);
    const double norm2 = model.a_mu.operatorNorm();
    const bool pass =
        report.min_abs_eigenvalue <= 1e-6 * norm2 && report.max_real_part <= 1e-9;
    return Result{pass, "min |lambda| " + format(report.min_abs_eigenvalue) + ", max Re " +
                            format(report.max_real_part) + ", K = " +
                            std::to_string(model.rank())};
}

// --- 7: kinetic energy rate along a trajectory --------------------------------
Result criterion_kinetic_energy(const SharedState& state) {
    const double dt = 0.04;
    const rom::Trajectory traj = rom::propagate_exact(state.model, state.times);
    const double norm2 = state.model.a_mu.operatorNorm();
    double worst_margin = 0.0;
    bool pass = true;
    for (Eigen::Index n = 0; n + 1 < traj.betas.cols(); ++n) {
        const Vector beta = traj.betas.col(n);
        const double fd = (0.5 * traj.betas.col(n + 1).squaredNorm() -
                           0.5 * beta.squaredNorm()) /
                          dt;
        const double rate = rom::kinetic_energy_rate(state.model, beta);
        const double bound = 10.0 * dt * norm2 * norm2 * beta.squaredNorm();
        worst_margin = std::max(worst_margin, std::abs(fd - rate) / bound);
        pass = pass && std::abs(fd - rate) <= bound;
    }
    return Result{pass, "worst |error|/bound " + format(worst_margin)};
}

// --- 8: end-to-end shape error on the default operating point -------------------
Result criterion_end_to_end(const SharedState& state) {
    const Matrix positions = rom::reconstruct_positions(
        state.model, rom::propagate_exact(state.model, state.times));
    const rom::metrics::ShapeErrorSeries series =
        rom::metrics::shape_error_series(state.capsule, positions, state.capsule.ref_length);
    const double max_eps = series.max_eps_shape();
    return Result{max_eps <= 1e-3, "max eps_shape " + format(max_eps) + " (K = " +
                                       std::to_string(state.model.rank()) + ")"};
}

// --- 9: learning-time monotonicity ---------------------------------------------
Result criterion_learning_time(const SharedState& state) {
    const auto rows = rom::metrics::learning_time_study(state.capsule, {2.0, 4.0, 6.0, 8.0},
                                                        rom::TrainConfig{});
    bool pass = rows.size() == 4;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        pass = pass && rows[i].eps_shape_end <= 1.1 * rows[i - 1].eps_shape_end;
    }
    pass = pass && rows.front().eps_shape_end >= 2.0 * rows.back().eps_shape_end;
    std::ostringstream detail;
    detail << "eps(T_L) =";
    for (const auto& row : rows) {
        detail << " " << format(row.eps_shape_end);
    }
    return Result{pass, detail.str()};
}

// --- 10: barycentric layer over a 7x7 grid ---------------------------------------
Result criterion_barycentric() {
    const auto start = Clock::now();
    rom::param::ParamDatabase db;
    rom::synth::ToyCapsuleConfig config;
    config.n_nodes = 40;
    config.snapshots = 60;
    config.coupling = 0.0;
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
            config.ca_like = 0.10 + 0.02 * i;
            config.ratio_like = 0.70 + 0.03 * j;
            db.add(rom::synth::generate_toy_capsule(config));
        }
    }

    bool pass = true;
    // Vertex exactness, bit level.
    rom::param::BarycentricQuery query;
    const rom::SnapshotSet at_vertex =
        rom::param::predict_trajectory(db, db.samples[10].theta, &query);
    pass = pass && at_vertex.displacements == db.samples[10].data.displacements &&
           at_vertex.velocities == db.samples[10].data.velocities;

    double worst_affine = 0.0;
    double worst_lambda_sum = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const rom::ParamCouple theta{0.105 + 0.005 * trial, 0.705 + 0.008 * trial};
        rom::param::BarycentricQuery info;
        const rom::SnapshotSet predicted = rom::param::predict_trajectory(db, theta, &info);
        worst_lambda_sum = std::max(worst_lambda_sum, std::abs(info.lambdas.sum() - 1.0));

        config.ca_like = theta.ca;
        config.ratio_like = theta.ratio;
        const rom::SnapshotSet truth = rom::synth::generate_toy_capsule(config);
        worst_affine =
            std::max(worst_affine, (predicted.displacements - truth.displacements).norm() /
                                       truth.displacements.norm());

        // Deterministic selection: repeating the query gives identical output.
        rom::param::BarycentricQuery again;
        rom::param::predict_trajectory(db, theta, &again);
        pass = pass && again.vertex_index == info.vertex_index &&
               again.lambdas == info.lambdas;
    }
    pass = pass && worst_lambda_sum <= 1e-12 && worst_affine <= 1e-10;
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 60.0;
    return Result{pass, "affine error " + format(worst_affine) + ", |sum(lambda)-1| " +
                            format(worst_lambda_sum) + ", " + format(elapsed) + " s"};
}

// --- 11: modified Hausdorff distance properties -----------------------------------
Result criterion_mhd() {
    bool pass = true;
    // Hand-computed example.
    rom::metrics::PointCloud a(3, 2), b(3, 1);
    a.col(0) << 0.0, 0.0, 0.0;
    a.col(1) << 2.0, 0.0, 0.0;
    b.col(0) << 0.0, 0.0, 0.0;
    pass = pass && rom::metrics::modified_hausdorff(a, b) == 1.0;

    const rom::metrics::PointCloud u = testutil::gaussian(3, 200, 601);
    const rom::metrics::PointCloud v = testutil::gaussian(3, 150, 602);
    pass = pass &&
           rom::metrics::modified_hausdorff(u, v) == rom::metrics::modified_hausdorff(v, u);

    Eigen::Vector3d shift;
    shift << 1.0, -2.0, 0.5;
    const rom::metrics::PointCloud u_shift = u.colwise() + shift;
    const rom::metrics::PointCloud v_shift = v.colwise() + shift;
    const double gap = std::abs(rom::metrics::modified_hausdorff(u_shift, v_shift) -
                                rom::metrics::modified_hausdorff(u, v));
    pass = pass && gap <= 1e-12;
    return Result{pass, "translation gap " + format(gap)};
}

// --- 12: runtime floor --------------------------------------------------------------
Result criterion_performance(const SharedState& state) {
    std::vector<double> samples;
    for (int rep = 0; rep < 5; ++rep) {
        const auto start = Clock::now();
        const rom::Trajectory traj = rom::propagate_exact(state.model, state.times);
        const Matrix positions = rom::reconstruct_positions(state.model, traj);
        samples.push_back(seconds_since(start) + 0.0 * positions(0, 0));
    }
    std::sort(samples.begin(), samples.end());
    const double t_rom = samples[samples.size() / 2];
    const double speedup = state.generation_seconds / t_rom;
    const bool pass = t_rom < 0.05 && speedup >= 100.0;
    return Result{pass, "t_rom " + format(t_rom) + " s, generator " +
                            format(state.generation_seconds) + " s, speedup " +
                            format(speedup)};
}

// --- 13: storage ratio ----------------------------------------------------------------
Result criterion_storage(const SharedState& state) {
    const auto dir = std::filesystem::temp_directory_path() / "snaprom_acceptance";
    std::filesystem::create_directories(dir);
    const auto snap_path = dir / "case.romsnap";
    const auto record_path = dir / "case.romrec";
    rom::write_snapshot_set(state.capsule, snap_path);
    rom::write_rom_record(rom::to_record(state.model), record_path);
    const double ratio = static_cast<double>(std::filesystem::file_size(snap_path)) /
                         static_cast<double>(std::filesystem::file_size(record_path));
    return Result{ratio >= 10.0, "file size ratio " + format(ratio)};
}

}  // namespace

int main() {
    SharedState state = make_shared_state();

    const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"appendix-a exact recovery", criterion_exact_recovery},
        {"forward/backward stability dichotomy", criterion_stability_dichotomy},
        {"pod truncation bound and minimality", criterion_pod_bound},
        {"tikhonov limits and ridge monotonicity", criterion_tikhonov_limits},
        {"kinematic consistency and euler order", [&] { return criterion_kinematics(state); }},
        {"steady-state spectral consistency", criterion_steady_spectrum},
        {"kinetic energy rate", [&] { return criterion_kinetic_energy(state); }},
        {"end-to-end synthetic pipeline", [&] { return criterion_end_to_end(state); }},
        {"learning-time monotonicity", [&] { return criterion_learning_time(state); }},
        {"barycentric layer", criterion_barycentric},
        {"modified hausdorff properties", criterion_mhd},
        {"performance floor", [&] { return criterion_performance(state); }},
        {"storage ratio", [&] { return criterion_storage(state); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result result;
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result = Result{false, std::string("exception: ") + e.what()};
        }
        if (!result.pass) {
            ++failures;
        }
        std::printf("[%2zu] %s  %s (%s)\n", i + 1, result.pass ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), result.detail.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    } else {
        std::printf("all %zu criteria passed\n", criteria.size());
    }
    return failures;
}
