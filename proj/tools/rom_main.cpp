/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

// Command-line front end: synthetic data generation, training, simulation,
// comparison, parameter-space interpolation, and benchmarking.  All analysis
// outputs are plot-ready CSV.  Exit codes: 0 ok, 2 validation error,
// 3 numeric failure, 4 I/O error.

#include "rom/csv.hpp"
#include "rom/dmd.hpp"
#include "rom/error.hpp"
#include "rom/metrics.hpp"
#include "rom/param_space.hpp"
#include "rom/pod.hpp"
#include "rom/rom_model.hpp"
#include "rom/snapshot.hpp"
#include "rom/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using rom::Matrix;
using rom::Vector;

std::vector<double> snapshot_times(const rom::SnapshotSet& s) {
    std::vector<double> times(static_cast<std::size_t>(s.snapshot_count()));
    for (Eigen::Index j = 0; j < s.snapshot_count(); ++j) {
        times[static_cast<std::size_t>(j)] = s.time_of(j);
    }
    return times;
}

void write_manifest(const CLI::App& cmd, const std::filesystem::path& out_path) {
    const std::filesystem::path path = out_path.string() + ".manifest";
    std::ofstream out(path);
    if (!out) {
        throw rom::IoError("cannot write run manifest: " + path.string());
    }
    out << "# resolved configuration for 'rom " << cmd.get_name() << "'\n";
    out << cmd.config_to_str(/*default_also=*/true, /*write_description=*/false);
}

void print_warnings(const rom::SnapshotSet& s) {
    for (const std::string& warning : rom::quality_warnings(s)) {
        std::cerr << "warning: " << warning << "\n";
    }
}

struct TrainOptions {
    rom::TrainConfig config;
    std::string lcurve_range;

    void attach(CLI::App* cmd) {
        cmd->add_option("--eps", config.eps, "POD accuracy threshold")
            ->capture_default_str();
        cmd->add_option("--max-modes", config.max_modes, "cap on the POD truncation rank")
            ->capture_default_str();
        cmd->add_option("--mu", config.mu, "Tikhonov regularization coefficient")
            ->capture_default_str();
        cmd->add_option("--lcurve", lcurve_range,
                        "select mu from an L-curve sweep over MIN:MAX (default 1e-12:1e-5)")
            ->expected(0, 1);
        cmd->add_option("--lcurve-points", config.lcurve_points_per_decade,
                        "L-curve sweep points per decade")
            ->capture_default_str();
    }

    rom::TrainConfig resolve(const CLI::App* cmd) const {
        rom::TrainConfig resolved = config;
        if (cmd->count("--lcurve") > 0) {
            resolved.use_lcurve = true;
            if (!lcurve_range.empty()) {
                const auto colon = lcurve_range.find(':');
                if (colon == std::string::npos) {
                    throw rom::ValidationError("--lcurve expects MIN:MAX, got '" + lcurve_range +
                                               "'");
                }
                try {
                    resolved.lcurve_min = std::stod(lcurve_range.substr(0, colon));
                    resolved.lcurve_max = std::stod(lcurve_range.substr(colon + 1));
                } catch (const std::exception&) {
                    throw rom::ValidationError("--lcurve expects numeric MIN:MAX, got '" +
                                               lcurve_range + "'");
                }
            }
        }
        return resolved;
    }
};

void print_model_summary(const rom::RomModel& model, const rom::TrainReport& report) {
    const rom::ContinuousStabilityReport stability = rom::continuous_stability(model);
    std::cout << "modes (K):          " << model.rank() << "\n"
              << "mu:                 " << model.mu << "\n"
              << "cond(X):            " << report.cond_x << "\n"
              << "cond(XX^T):         " << report.cond_xxt << "\n"
              << "relative residual:  " << report.identification.residual_fro << "\n"
              << "|A_mu|_F:           " << report.identification.norm_fro << "\n"
              << "max Re(lambda):     " << stability.max_real_part << "\n"
              << "min |lambda|:       " << stability.min_abs_eigenvalue << "\n"
              << "velocity RIC:       " << report.velocity_ric << "\n";
}

int run_synth_linear(const CLI::App* cmd, Eigen::Index k, Eigen::Index dofs, Eigen::Index n,
                     double dt, const std::string& spectrum, unsigned seed,
                     const std::filesystem::path& out) {
    rom::synth::SpectrumKind kind = rom::synth::SpectrumKind::stable;
    if (spectrum == "center") {
        kind = rom::synth::SpectrumKind::center;
    } else if (spectrum == "mixed") {
        kind = rom::synth::SpectrumKind::mixed;
    } else if (spectrum != "stable") {
        throw rom::ValidationError("--spectrum must be stable, center, or mixed");
    }
    const rom::synth::LinearOracle oracle =
        rom::synth::make_linear_oracle(k, dofs, n, dt, kind, seed);
    rom::write_snapshot_set(rom::synth::generate_linear(oracle), out);
    write_manifest(*cmd, out);
    std::cout << "wrote " << out.string() << " (d=" << dofs << ", N=" << n << ")\n";
    return 0;
}

int run_synth_capsule(const CLI::App* cmd, const rom::synth::ToyCapsuleConfig& config,
                      const std::filesystem::path& out) {
    rom::write_snapshot_set(rom::synth::generate_toy_capsule(config), out);
    write_manifest(*cmd, out);
    std::cout << "wrote " << out.string() << " (nodes=" << config.n_nodes << ", N="
              << config.snapshots << ")\n";
    return 0;
}

int run_pod(const CLI::App* cmd, const std::filesystem::path& in, double eps,
            Eigen::Index max_modes, const std::filesystem::path& out,
            const std::filesystem::path& ric_csv) {
    const rom::SnapshotSet s = rom::read_snapshot_set(in);
    print_warnings(s);
    const rom::pod::PodBasis basis = rom::pod::build_basis(s, eps, max_modes);

    // Basis-only partial record: coefficient matrix left zero until training.
    rom::RomRecord record;
    record.theta = s.theta;
    record.modes = basis.modes;
    record.a_mu = Matrix::Zero(basis.rank, basis.rank);
    record.mu = 0.0;
    record.eps = eps;
    record.dt = s.dt;
    record.alpha0 = Vector::Zero(basis.rank);
    record.beta0 = basis.modes.transpose() * s.velocities.col(0);
    record.initial_positions = s.initial_positions;
    record.ref_length = s.ref_length;
    rom::write_rom_record(record, out);

    if (!ric_csv.empty()) {
        const std::vector<double> ric = rom::pod::ric_from_singular_values(basis.singular_values);
        std::vector<std::vector<double>> rows;
        rows.reserve(ric.size());
        for (std::size_t i = 0; i < ric.size(); ++i) {
            rows.push_back({static_cast<double>(i + 1), ric[i]});
        }
        rom::csv::write_table(ric_csv, {"k", "ric"}, rows);
    }
    write_manifest(*cmd, out);
    std::cout << "rank K = " << basis.rank << " (eps = " << eps << ", cap " << max_modes << ")\n";
    return 0;
}

int run_train(const CLI::App* cmd, const std::filesystem::path& in,
              const TrainOptions& options, const std::filesystem::path& out,
              const std::filesystem::path& diagnostics,
              const std::filesystem::path& lcurve_csv) {
    const rom::SnapshotSet s = rom::read_snapshot_set(in);
    print_warnings(s);
    const rom::TrainConfig config = options.resolve(cmd);
    rom::TrainReport report;
    const rom::RomModel model = rom::train_rom(s, config, &report);
    rom::write_rom_record(rom::to_record(model), out);

    if (!diagnostics.empty()) {
        std::vector<std::vector<double>> rows;
        rows.reserve(report.time_residual.size());
        for (const auto& [t, r] : report.time_residual) {
            rows.push_back({t, r});
        }
        rom::csv::write_table(diagnostics, {"t", "R"}, rows);
    }
    if (report.lcurve.has_value()) {
        const std::filesystem::path path =
            lcurve_csv.empty() ? std::filesystem::path(out.string() + ".lcurve.csv") : lcurve_csv;
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < report.lcurve->points.size(); ++i) {
            const auto& point = report.lcurve->points[i];
            rows.push_back({point.mu, point.residual, point.norm,
                            static_cast<int>(i) == report.lcurve->selected_index ? 1.0 : 0.0});
        }
        rom::csv::write_table(path, {"mu", "residual", "norm", "selected"}, rows);
    }
    write_manifest(*cmd, out);
    print_model_summary(model, report);
    if (const auto steady = rom::metrics::steady_state_time(s)) {
        std::cout << "steady state (velocity-stationarity proxy) from t = " << *steady << "\n";
    }
    return 0;
}

int run_simulate(const CLI::App* cmd, const std::filesystem::path& model_path, double t_end,
                 double dt_out, const std::string& scheme, const std::filesystem::path& out,
                 const std::filesystem::path& diagnostics) {
    if (!(dt_out > 0.0) || !(t_end >= dt_out)) {
        throw rom::ValidationError("simulate: need 0 < dt-out <= t-end");
    }
    const rom::RomModel model = rom::from_record(rom::read_rom_record(model_path));
    const auto steps = static_cast<Eigen::Index>(std::llround(t_end / dt_out));

    rom::Trajectory trajectory;
    if (scheme == "exact") {
        std::vector<double> times(static_cast<std::size_t>(steps));
        for (Eigen::Index i = 0; i < steps; ++i) {
            times[static_cast<std::size_t>(i)] = static_cast<double>(i + 1) * dt_out;
        }
        trajectory = rom::propagate_exact(model, times);
    } else if (scheme == "euler") {
        const rom::Trajectory full = rom::propagate_euler(model, dt_out, steps);
        trajectory.times.assign(full.times.begin() + 1, full.times.end());
        trajectory.alphas = full.alphas.rightCols(steps);
        trajectory.betas = full.betas.rightCols(steps);
    } else {
        throw rom::ValidationError("simulate: --scheme must be exact or euler");
    }

    rom::SnapshotSet result;
    result.theta = model.theta;
    result.dt = dt_out;
    result.ref_length = model.ref_length;
    result.initial_positions = model.initial_positions;
    result.displacements = model.basis.modes * trajectory.alphas;
    result.velocities = model.basis.modes * trajectory.betas;
    rom::write_snapshot_set(result, out);

    if (!diagnostics.empty()) {
        const rom::Spectrum sym =
            rom::eigenvalues(0.5 * (model.a_mu + model.a_mu.transpose()));
        const rom::DiscreteStabilityReport discrete = rom::discrete_stability(model, dt_out);
        std::vector<std::vector<double>> rows;
        for (Eigen::Index i = 0; i < model.spectrum.size(); ++i) {
            rows.push_back({static_cast<double>(i), model.spectrum(i).real(),
                            model.spectrum(i).imag(), sym(i).real(), sym(i).imag(),
                            discrete.spectral_radius});
        }
        rom::csv::write_table(diagnostics,
                              {"k", "a_mu_re", "a_mu_im", "a_mu_sym_re", "a_mu_sym_im",
                               "euler_radius"},
                              rows);
    }
    write_manifest(*cmd, out);
    const rom::ContinuousStabilityReport stability = rom::continuous_stability(model);
    std::cout << "propagated " << steps << " steps (" << scheme << "), max Re(lambda) = "
              << stability.max_real_part << "\n";
    return 0;
}

int run_compare(const CLI::App* cmd, const std::filesystem::path& fom_path,
                const std::filesystem::path& model_path, const std::filesystem::path& out) {
    const rom::SnapshotSet fom = rom::read_snapshot_set(fom_path);
    const rom::RomModel model = rom::from_record(rom::read_rom_record(model_path));
    const rom::Trajectory trajectory = rom::propagate_exact(model, snapshot_times(fom));
    const Matrix positions = rom::reconstruct_positions(model, trajectory);
    const rom::metrics::ShapeErrorSeries series =
        rom::metrics::shape_error_series(fom, positions, fom.ref_length);

    std::vector<std::vector<double>> rows;
    rows.reserve(series.times.size());
    for (std::size_t j = 0; j < series.times.size(); ++j) {
        rows.push_back({series.times[j], series.eps_shape[j], series.rms[j]});
    }
    rom::csv::write_table(out, {"t", "eps_shape", "rms"}, rows);
    write_manifest(*cmd, out);
    std::cout << "max eps_shape = " << series.max_eps_shape() << "\n";
    if (const auto steady = rom::metrics::steady_state_time(fom)) {
        std::cout << "steady state (velocity-stationarity proxy) from t = " << *steady << "\n";
    }
    return 0;
}

int run_interpolate(const CLI::App* cmd, const std::filesystem::path& db_dir, double ca,
                    double ratio, const Eigen::Vector2d& axis_scale, const TrainOptions& options,
                    const std::filesystem::path& out,
                    const std::filesystem::path& predicted_path) {
    rom::param::ParamDatabase db = rom::param::load_database(db_dir);
    db.axis_scale = axis_scale;
    const rom::ParamCouple theta{ca, ratio};
    rom::param::BarycentricQuery query;
    const rom::SnapshotSet predicted = rom::param::predict_trajectory(db, theta, &query);
    if (query.extrapolation) {
        std::cerr << "warning: theta lies outside the selected triangle, weights extrapolate ("
                  << query.lambdas.transpose() << ")\n";
    }
    const rom::RomModel model = rom::train_rom(predicted, options.resolve(cmd));
    rom::write_rom_record(rom::to_record(model), out);
    if (!predicted_path.empty()) {
        rom::write_snapshot_set(predicted, predicted_path);
    }
    write_manifest(*cmd, out);
    std::cout << "triangle: samples " << query.vertex_index[0] << ", " << query.vertex_index[1]
              << ", " << query.vertex_index[2] << "; lambda = " << query.lambdas.transpose()
              << "\n";
    return 0;
}

int run_sweep(const CLI::App* cmd, const std::filesystem::path& train_dir,
              const std::filesystem::path& test_dir, const Eigen::Vector2d& axis_scale,
              const TrainOptions& options, const std::filesystem::path& out) {
    rom::param::ParamDatabase train = rom::param::load_database(train_dir);
    train.axis_scale = axis_scale;
    const rom::param::ParamDatabase test = rom::param::load_database(test_dir);
    const std::vector<rom::param::SweepRow> rows =
        rom::param::sweep(train, test, options.resolve(cmd));
    std::vector<std::vector<double>> table;
    table.reserve(rows.size());
    for (const auto& row : rows) {
        table.push_back({row.ca, row.ratio, row.t, row.eps_shape});
    }
    rom::csv::write_table(out, {"ca", "ratio", "t", "eps_shape"}, table);
    write_manifest(*cmd, out);
    std::cout << "evaluated " << test.samples.size() << " test couples\n";
    return 0;
}

int run_study_learning(const CLI::App* cmd, const std::filesystem::path& in,
                       const std::vector<double>& t_learn, const TrainOptions& options,
                       const std::filesystem::path& out) {
    const rom::SnapshotSet s = rom::read_snapshot_set(in);
    const std::vector<rom::metrics::LearningStudyRow> rows =
        rom::metrics::learning_time_study(s, t_learn, options.resolve(cmd));
    std::vector<std::vector<double>> table;
    table.reserve(rows.size());
    for (const auto& row : rows) {
        table.push_back({row.t_learn, row.eps_shape_end});
    }
    rom::csv::write_table(out, {"t_learn", "eps_shape_end"}, table);
    write_manifest(*cmd, out);
    return 0;
}

int run_bench(const CLI::App* cmd, const std::filesystem::path& fom_path,
              const std::filesystem::path& model_path, int repetitions, double fom_seconds,
              const std::filesystem::path& out) {
    if (repetitions < 3) {
        throw rom::ValidationError("bench: repetitions must be >= 3");
    }
    const rom::SnapshotSet fom = rom::read_snapshot_set(fom_path);
    const rom::RomModel model = rom::from_record(rom::read_rom_record(model_path));
    const std::vector<double> times = snapshot_times(fom);

    using clock = std::chrono::steady_clock;
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(repetitions));
    for (int rep = 0; rep < repetitions; ++rep) {
        const auto start = clock::now();
        const rom::Trajectory trajectory = rom::propagate_exact(model, times);
        const Matrix positions = rom::reconstruct_positions(model, trajectory);
        const auto stop = clock::now();
        samples.push_back(std::chrono::duration<double>(stop - start).count() +
                          0.0 * positions(0, 0));
    }
    std::sort(samples.begin(), samples.end());
    const double t_rom = samples[samples.size() / 2];

    double t_fom = fom_seconds;
    if (!(t_fom > 0.0)) {
        // No recorded value given: time the synthetic generator at matching size.
        rom::synth::ToyCapsuleConfig config;
        config.n_nodes = fom.node_count();
        config.snapshots = fom.snapshot_count();
        config.dt = fom.dt;
        const auto start = clock::now();
        const rom::SnapshotSet regenerated = rom::synth::generate_toy_capsule(config);
        const auto stop = clock::now();
        t_fom = std::chrono::duration<double>(stop - start).count() +
                0.0 * regenerated.displacements(0, 0);
    }

    const double speedup = t_fom / t_rom;
    rom::csv::write_table(out, {"dt_fom", "t_fom", "t_rom", "speedup"},
                          {{fom.dt, t_fom, t_rom, speedup}});
    write_manifest(*cmd, out);
    std::cout << "t_fom = " << t_fom << " s, t_rom = " << t_rom << " s, speedup = " << speedup
              << "\n";
    return 0;
}

int run_storage_report(const CLI::App* cmd, const std::filesystem::path& db_dir,
                       const std::filesystem::path& out) {
    if (!std::filesystem::is_directory(db_dir)) {
        throw rom::IoError("storage-report: not a directory: " + db_dir.string());
    }
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(db_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".romsnap") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());

    std::ofstream table(out);
    if (!table) {
        throw rom::IoError("cannot open for writing: " + out.string());
    }
    table << "sample,snapshot_bytes,rom_bytes,ratio\n";
    std::uintmax_t total_snapshot = 0;
    std::uintmax_t total_rom = 0;
    for (const auto& path : paths) {
        const std::uintmax_t snapshot_bytes = std::filesystem::file_size(path);
        std::filesystem::path record_path = path;
        record_path.replace_extension(".romrec");
        const std::uintmax_t rom_bytes = std::filesystem::is_regular_file(record_path)
                                             ? std::filesystem::file_size(record_path)
                                             : 0;
        total_snapshot += snapshot_bytes;
        total_rom += rom_bytes;
        table << path.stem().string() << ',' << snapshot_bytes << ',' << rom_bytes << ',';
        if (rom_bytes > 0) {
            table << rom::csv::format_double(static_cast<double>(snapshot_bytes) /
                                             static_cast<double>(rom_bytes));
        }
        table << '\n';
    }
    if (!paths.empty()) {
        table << "TOTAL," << total_snapshot << ',' << total_rom << ',';
        if (total_rom > 0) {
            table << rom::csv::format_double(static_cast<double>(total_snapshot) /
                                             static_cast<double>(total_rom));
        }
        table << '\n';
    }
    if (!table) {
        throw rom::IoError("write failed: " + out.string());
    }
    write_manifest(*cmd, out);
    std::cout << "reported " << paths.size() << " samples\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"snapshot-driven reduced-order modeling toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value configuration file, with [subcommand] sections or dotted keys "
                   "(train.mu=1e-8); command-line flags override");

    // ---- synth ----------------------------------------------------------
    CLI::App* synth = app.add_subcommand("synth", "generate synthetic full-order data");
    synth->require_subcommand(1);

    CLI::App* synth_linear = synth->add_subcommand("linear", "exact linear reference system");
    Eigen::Index lin_k = 10, lin_d = 7686, lin_n = 250;
    double lin_dt = 0.04;
    std::string lin_spectrum = "stable";
    unsigned lin_seed = 1;
    std::filesystem::path lin_out;
    synth_linear->add_option("--k", lin_k, "reduced dimension")->capture_default_str();
    synth_linear->add_option("--d", lin_d, "full-order dimension (3 x nodes)")
        ->capture_default_str();
    synth_linear->add_option("--n", lin_n, "snapshot count")->capture_default_str();
    synth_linear->add_option("--dt", lin_dt, "snapshot spacing")->capture_default_str();
    synth_linear->add_option("--spectrum", lin_spectrum, "stable|center|mixed")
        ->capture_default_str();
    synth_linear->add_option("--seed", lin_seed, "random seed")->capture_default_str();
    synth_linear->add_option("--out", lin_out, "output .romsnap path")->required();

    CLI::App* synth_capsule =
        synth->add_subcommand("capsule", "capsule-like relaxation toward a steady shape");
    rom::synth::ToyCapsuleConfig capsule;
    std::filesystem::path capsule_out;
    synth_capsule->add_option("--nodes", capsule.n_nodes, "node count")->capture_default_str();
    synth_capsule->add_option("--n", capsule.snapshots, "snapshot count")->capture_default_str();
    synth_capsule->add_option("--dt", capsule.dt, "snapshot spacing")->capture_default_str();
    synth_capsule->add_option("--ca-like", capsule.ca_like, "capillary-like parameter")
        ->capture_default_str();
    synth_capsule->add_option("--ratio-like", capsule.ratio_like, "size-ratio-like parameter")
        ->capture_default_str();
    synth_capsule->add_option("--amplitude", capsule.amplitude, "deformation amplitude per node")
        ->capture_default_str();
    synth_capsule->add_option("--coupling", capsule.coupling, "nonlinear mode coupling strength")
        ->capture_default_str();
    synth_capsule
        ->add_option("--translation", capsule.translation_speed, "steady translation speed")
        ->capture_default_str();
    synth_capsule->add_option("--modes", capsule.n_shape_modes, "number of shape modes")
        ->capture_default_str();
    synth_capsule->add_option("--substeps", capsule.substeps, "integrator substeps per snapshot")
        ->capture_default_str();
    synth_capsule->add_option("--seed", capsule.seed, "random seed")->capture_default_str();
    synth_capsule->add_option("--out", capsule_out, "output .romsnap path")->required();

    // ---- pod -------------------------------------------------------------
    CLI::App* pod_cmd = app.add_subcommand("pod", "build the truncated POD basis");
    std::filesystem::path pod_in, pod_out, pod_ric;
    double pod_eps = 1e-6;
    Eigen::Index pod_max_modes = 20;
    pod_cmd->add_option("--in", pod_in, "input .romsnap")->required();
    pod_cmd->add_option("--eps", pod_eps, "POD accuracy threshold")->capture_default_str();
    pod_cmd->add_option("--max-modes", pod_max_modes, "cap on the truncation rank")
        ->capture_default_str();
    pod_cmd->add_option("--out", pod_out, "output basis record (.romrec-part)")->required();
    pod_cmd->add_option("--ric-csv", pod_ric, "write the RIC curve to this CSV");

    // ---- train -----------------------------------------------------------
    CLI::App* train_cmd = app.add_subcommand("train", "identify the reduced dynamical system");
    std::filesystem::path train_in, train_out, train_diag, train_lcurve_csv;
    TrainOptions train_options;
    train_cmd->add_option("--in", train_in, "input .romsnap")->required();
    train_options.attach(train_cmd);
    train_cmd->add_option("--out", train_out, "output model (.romrec)")->required();
    train_cmd->add_option("--diagnostics", train_diag, "write the time residual R(t) CSV");
    train_cmd->add_option("--lcurve-csv", train_lcurve_csv,
                          "L-curve CSV path (default <out>.lcurve.csv when sweeping)");

    // ---- simulate ----------------------------------------------------------
    CLI::App* sim_cmd = app.add_subcommand("simulate", "propagate a trained model");
    std::filesystem::path sim_model, sim_out, sim_diag;
    double sim_t_end = 10.0, sim_dt_out = 0.04;
    std::string sim_scheme = "exact";
    sim_cmd->add_option("--model", sim_model, "input model (.romrec)")->required();
    sim_cmd->add_option("--t-end", sim_t_end, "final nondimensional time")->capture_default_str();
    sim_cmd->add_option("--dt-out", sim_dt_out, "output snapshot spacing")->capture_default_str();
    sim_cmd->add_option("--scheme", sim_scheme, "exact|euler")->capture_default_str();
    sim_cmd->add_option("--out", sim_out, "output trajectory (.romsnap)")->required();
    sim_cmd->add_option("--diagnostics", sim_diag, "write the spectral diagnostics CSV");

    // ---- compare -----------------------------------------------------------
    CLI::App* cmp_cmd = app.add_subcommand("compare", "shape error of a model against data");
    std::filesystem::path cmp_fom, cmp_model, cmp_out;
    cmp_cmd->add_option("--fom", cmp_fom, "reference .romsnap")->required();
    cmp_cmd->add_option("--model", cmp_model, "model .romrec")->required();
    cmp_cmd->add_option("--out", cmp_out, "output eps_shape CSV")->required();

    // ---- interpolate ---------------------------------------------------------
    CLI::App* interp_cmd =
        app.add_subcommand("interpolate", "predict and retrain at an unseen parameter couple");
    std::filesystem::path interp_db, interp_out, interp_predicted;
    double interp_ca = 0.0, interp_ratio = 0.0;
    TrainOptions interp_options;
    interp_cmd->add_option("--db", interp_db, "directory of training .romsnap files")->required();
    interp_cmd->add_option("--ca", interp_ca, "target capillary number")->required();
    interp_cmd->add_option("--ratio", interp_ratio, "target size ratio")->required();
    double interp_scale_ca = 1.0, interp_scale_ratio = 1.0;
    interp_cmd->add_option("--scale-ca", interp_scale_ca, "distance weight on the ca axis")
        ->capture_default_str();
    interp_cmd->add_option("--scale-ratio", interp_scale_ratio,
                           "distance weight on the ratio axis")
        ->capture_default_str();
    interp_options.attach(interp_cmd);
    interp_cmd->add_option("--out", interp_out, "output model (.romrec)")->required();
    interp_cmd->add_option("--predicted", interp_predicted,
                           "also write the interpolated trajectory (.romsnap)");

    // ---- sweep ---------------------------------------------------------------
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "batch-evaluate interpolated models against test data");
    std::filesystem::path sweep_train, sweep_test, sweep_out;
    TrainOptions sweep_options;
    sweep_cmd->add_option("--db", sweep_train, "training database directory")->required();
    sweep_cmd->add_option("--test", sweep_test, "testing database directory")->required();
    double sweep_scale_ca = 1.0, sweep_scale_ratio = 1.0;
    sweep_cmd->add_option("--scale-ca", sweep_scale_ca, "distance weight on the ca axis")
        ->capture_default_str();
    sweep_cmd->add_option("--scale-ratio", sweep_scale_ratio,
                          "distance weight on the ratio axis")
        ->capture_default_str();
    sweep_options.attach(sweep_cmd);
    sweep_cmd->add_option("--out", sweep_out, "output heat-map CSV")->required();

    // ---- study-learning -------------------------------------------------------
    CLI::App* study_cmd =
        app.add_subcommand("study-learning", "shape error versus learning-time prefix");
    std::filesystem::path study_in, study_out;
    std::vector<double> study_tl{2.0, 4.0, 6.0, 8.0};
    TrainOptions study_options;
    study_cmd->add_option("--in", study_in, "input .romsnap")->required();
    study_cmd->add_option("--tl", study_tl, "learning times (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    study_options.attach(study_cmd);
    study_cmd->add_option("--out", study_out, "output CSV")->required();

    // ---- bench ------------------------------------------------------------------
    CLI::App* bench_cmd = app.add_subcommand("bench", "speedup of the model over the generator");
    std::filesystem::path bench_fom, bench_model, bench_out;
    int bench_reps = 5;
    double bench_fom_seconds = 0.0;
    bench_cmd->add_option("--fom", bench_fom, "reference .romsnap")->required();
    bench_cmd->add_option("--model", bench_model, "model .romrec")->required();
    bench_cmd->add_option("--repetitions", bench_reps, "timing repetitions (>= 3)")
        ->capture_default_str();
    bench_cmd->add_option("--fom-seconds", bench_fom_seconds,
                          "recorded full-order runtime; measured from the generator when absent");
    bench_cmd->add_option("--out", bench_out, "output CSV")->required();

    // ---- storage-report ------------------------------------------------------------
    CLI::App* storage_cmd =
        app.add_subcommand("storage-report", "bytes of snapshot versus model storage");
    std::filesystem::path storage_db, storage_out;
    storage_cmd->add_option("--db", storage_db, "database directory")->required();
    storage_cmd->add_option("--out", storage_out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth_linear->parsed()) {
            return run_synth_linear(synth_linear, lin_k, lin_d, lin_n, lin_dt, lin_spectrum,
                                    lin_seed, lin_out);
        }
        if (synth_capsule->parsed()) {
            return run_synth_capsule(synth_capsule, capsule, capsule_out);
        }
        if (pod_cmd->parsed()) {
            return run_pod(pod_cmd, pod_in, pod_eps, pod_max_modes, pod_out, pod_ric);
        }
        if (train_cmd->parsed()) {
            return run_train(train_cmd, train_in, train_options, train_out, train_diag,
                             train_lcurve_csv);
        }
        if (sim_cmd->parsed()) {
            return run_simulate(sim_cmd, sim_model, sim_t_end, sim_dt_out, sim_scheme, sim_out,
                                sim_diag);
        }
        if (cmp_cmd->parsed()) {
            return run_compare(cmp_cmd, cmp_fom, cmp_model, cmp_out);
        }
        if (interp_cmd->parsed()) {
            return run_interpolate(interp_cmd, interp_db, interp_ca, interp_ratio,
                                   Eigen::Vector2d(interp_scale_ca, interp_scale_ratio),
                                   interp_options, interp_out, interp_predicted);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(sweep_cmd, sweep_train, sweep_test,
                             Eigen::Vector2d(sweep_scale_ca, sweep_scale_ratio), sweep_options,
                             sweep_out);
        }
        if (study_cmd->parsed()) {
            return run_study_learning(study_cmd, study_in, study_tl, study_options, study_out);
        }
        if (bench_cmd->parsed()) {
            return run_bench(bench_cmd, bench_fom, bench_model, bench_reps, bench_fom_seconds,
                             bench_out);
        }
        if (storage_cmd->parsed()) {
            return run_storage_report(storage_cmd, storage_db, storage_out);
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const rom::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const rom::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const rom::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
