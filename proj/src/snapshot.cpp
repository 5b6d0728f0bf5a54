/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/snapshot.hpp"

#include "rom/csv.hpp"
#include "rom/error.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

static_assert(std::endian::native == std::endian::little,
              "binary snapshot formats assume a little-endian host");

namespace rom {

namespace {

constexpr char kSnapshotMagic[8] = {'R', 'O', 'M', 'S', 'N', 'A', 'P', '1'};
constexpr char kRecordMagic[8] = {'R', 'O', 'M', 'R', 'E', 'C', '1', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

// Sanity caps used before allocating payload buffers for untrusted headers.
constexpr std::uint64_t kMaxNodes = 100'000'000;
constexpr std::uint64_t kMaxSnapshots = 10'000'000;

class BinaryWriter {
  public:
    explicit BinaryWriter(const std::filesystem::path& path)
        : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) {
            throw IoError("cannot open for writing: " + path.string());
        }
    }

    void bytes(const void* data, std::size_t count) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(count));
        if (!out_) {
            throw IoError("write failed: " + path_.string());
        }
    }

    void u32(std::uint32_t v) { bytes(&v, sizeof v); }
    void u64(std::uint64_t v) { bytes(&v, sizeof v); }
    void f64(double v) { bytes(&v, sizeof v); }
    void matrix(const Matrix& m) { bytes(m.data(), sizeof(double) * static_cast<std::size_t>(m.size())); }
    void vector(const Vector& v) { bytes(v.data(), sizeof(double) * static_cast<std::size_t>(v.size())); }

  private:
    std::filesystem::path path_;
    std::ofstream out_;
};

class BinaryReader {
  public:
    explicit BinaryReader(const std::filesystem::path& path)
        : path_(path), in_(path, std::ios::binary) {
        if (!in_) {
            throw IoError("cannot open for reading: " + path.string());
        }
        in_.seekg(0, std::ios::end);
        size_ = static_cast<std::uint64_t>(in_.tellg());
        in_.seekg(0, std::ios::beg);
    }

    std::uint64_t file_size() const { return size_; }

    void bytes(void* data, std::size_t count) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in_.gcount()) != count) {
            throw IoError("unexpected end of file: " + path_.string());
        }
    }

    std::uint32_t u32() { std::uint32_t v; bytes(&v, sizeof v); return v; }
    std::uint64_t u64() { std::uint64_t v; bytes(&v, sizeof v); return v; }
    double f64() { double v; bytes(&v, sizeof v); return v; }

    Matrix matrix(Eigen::Index rows, Eigen::Index cols) {
        Matrix m(rows, cols);
        bytes(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
        return m;
    }

    Vector vector(Eigen::Index n) {
        Vector v(n);
        bytes(v.data(), sizeof(double) * static_cast<std::size_t>(v.size()));
        return v;
    }

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::uint64_t size_ = 0;
};

void check_magic(BinaryReader& in, const char (&magic)[8], const char* format_name) {
    char buffer[8];
    in.bytes(buffer, 8);
    if (std::memcmp(buffer, magic, 8) != 0) {
        throw IoError(std::string("bad magic, not a ") + format_name + " file: " +
                      in.path().string());
    }
    const std::uint32_t version = in.u32();
    if (version != kFormatVersion) {
        throw IoError(std::string(format_name) + " version " + std::to_string(version) +
                      " unsupported: " + in.path().string());
    }
}

void require_finite_matrix(const Matrix& m, const std::string& field) {
    if (m.allFinite()) {
        return;
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j))) {
                throw ValidationError(field + ": non-finite entry at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
            }
        }
    }
}

void require_positive(double value, const std::string& field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(field + ": must be positive and finite, got " +
                              std::to_string(value));
    }
}

std::string find_value(const std::vector<std::pair<std::string, std::string>>& pairs,
                       const std::string& key, const std::filesystem::path& path) {
    for (const auto& [k, v] : pairs) {
        if (k == key) {
            return v;
        }
    }
    throw IoError("meta.csv is missing key '" + key + "': " + path.string());
}

void derive_velocities_impl(SnapshotSet& s) {
    const Eigen::Index n = s.displacements.cols();
    s.velocities.resize(s.displacements.rows(), n);
    s.velocities.col(0) = s.displacements.col(0) / s.dt;  // u^0 is the zero field
    for (Eigen::Index j = 1; j < n; ++j) {
        s.velocities.col(j) = (s.displacements.col(j) - s.displacements.col(j - 1)) / s.dt;
    }
    s.derived_velocities = true;
}

SnapshotSet read_csv_bundle(const std::filesystem::path& dir) {
    const auto meta_path = dir / "meta.csv";
    const auto pairs = csv::read_pairs(meta_path);

    SnapshotSet s;
    const auto n_nodes = static_cast<Eigen::Index>(std::stoll(find_value(pairs, "n_nodes", meta_path)));
    const auto n = static_cast<Eigen::Index>(std::stoll(find_value(pairs, "N", meta_path)));
    s.dt = std::stod(find_value(pairs, "dt", meta_path));
    s.theta.ca = std::stod(find_value(pairs, "ca", meta_path));
    s.theta.ratio = std::stod(find_value(pairs, "ratio", meta_path));
    s.ref_length = std::stod(find_value(pairs, "ref_length", meta_path));
    for (const auto& [k, v] : pairs) {
        if (k == "frame") {
            if (v == "lab") {
                s.frame = Frame::lab;
            } else if (v == "centroid") {
                s.frame = Frame::centroid;
            } else {
                throw IoError("meta.csv: unknown frame '" + v + "': " + meta_path.string());
            }
        } else if (k == "velocities" && v == "derived") {
            s.derived_velocities = true;
        }
    }

    const Matrix x = csv::read_matrix(dir / "X.csv");
    if (x.cols() != 1 || x.rows() != 3 * n_nodes) {
        throw ValidationError("initial_positions: X.csv must be " + std::to_string(3 * n_nodes) +
                              " rows x 1 column");
    }
    s.initial_positions = x.col(0);
    s.displacements = csv::read_matrix(dir / "U.csv");
    if (s.displacements.rows() != 3 * n_nodes || s.displacements.cols() != n) {
        throw ValidationError("displacements: U.csv shape does not match meta.csv");
    }
    if (std::filesystem::exists(dir / "V.csv")) {
        s.velocities = csv::read_matrix(dir / "V.csv");
    } else {
        derive_velocities_impl(s);
    }
    validate(s);
    return s;
}

}  // namespace

void validate(const SnapshotSet& s) {
    const Eigen::Index d = s.displacements.rows();
    if (d < 3 || d % 3 != 0) {
        throw ValidationError("displacements: row count must be a positive multiple of 3, got " +
                              std::to_string(d));
    }
    if (s.displacements.cols() < 1) {
        throw ValidationError("displacements: at least one snapshot column required");
    }
    if (s.velocities.rows() != d || s.velocities.cols() != s.displacements.cols()) {
        throw ValidationError("velocities: shape must match displacements");
    }
    if (s.initial_positions.size() != d) {
        throw ValidationError("initial_positions: length must equal 3 * n_nodes");
    }
    require_positive(s.dt, "dt");
    require_positive(s.ref_length, "ref_length");
    require_positive(s.theta.ca, "theta.ca");
    require_positive(s.theta.ratio, "theta.ratio");
    require_finite_matrix(s.initial_positions, "initial_positions");
    require_finite_matrix(s.displacements, "displacements");
    require_finite_matrix(s.velocities, "velocities");
}

std::vector<std::string> quality_warnings(const SnapshotSet& s) {
    std::vector<std::string> warnings;
    // Forward difference of displacements should loosely track the velocities;
    // the producing solver may use a higher-order scheme, so the threshold is lax.
    const Eigen::Index n = s.snapshot_count();
    double worst = 0.0;
    Eigen::Index worst_col = -1;
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        const Vector diff = (s.displacements.col(j + 1) - s.displacements.col(j)) / s.dt;
        const double scale = std::max(s.velocities.col(j).norm(), 1e-30);
        const double rel = (diff - s.velocities.col(j)).norm() / scale;
        if (rel > worst) {
            worst = rel;
            worst_col = j;
        }
    }
    if (worst > 0.5) {
        warnings.push_back("kinematic consistency: (u[n+1]-u[n])/dt deviates from v[n] by " +
                           std::to_string(worst * 100.0) + "% at column " +
                           std::to_string(worst_col));
    }
    if (s.velocities.norm() == 0.0 && s.displacements.norm() != 0.0) {
        warnings.push_back("velocities are identically zero");
    }
    if (s.derived_velocities) {
        warnings.push_back("velocities were derived from displacement differences, not stored "
                           "by the producing solver");
    }
    return warnings;
}

void derive_velocities(SnapshotSet& s) {
    if (s.displacements.cols() < 1 || !(s.dt > 0.0)) {
        throw ValidationError("derive_velocities: displacements and dt must be set first");
    }
    derive_velocities_impl(s);
}

SnapshotSet read_snapshot_set(const std::filesystem::path& path) {
    if (std::filesystem::is_directory(path)) {
        return read_csv_bundle(path);
    }
    BinaryReader in(path);
    check_magic(in, kSnapshotMagic, "ROMSNAP1");

    const std::uint64_t n_nodes = in.u64();
    const std::uint64_t n = in.u64();
    if (n_nodes < 1 || n_nodes > kMaxNodes || n < 1 || n > kMaxSnapshots) {
        throw IoError("implausible dimensions in header: " + path.string());
    }
    if (in.file_size() != snapshot_file_bytes(static_cast<Eigen::Index>(n_nodes),
                                              static_cast<Eigen::Index>(n))) {
        throw IoError("file size does not match header dimensions: " + path.string());
    }

    SnapshotSet s;
    s.dt = in.f64();
    s.theta.ca = in.f64();
    s.theta.ratio = in.f64();
    s.ref_length = in.f64();
    const auto d = static_cast<Eigen::Index>(3 * n_nodes);
    s.initial_positions = in.vector(d);
    s.displacements = in.matrix(d, static_cast<Eigen::Index>(n));
    s.velocities = in.matrix(d, static_cast<Eigen::Index>(n));
    validate(s);
    return s;
}

void write_snapshot_set(const SnapshotSet& s, const std::filesystem::path& path) {
    validate(s);
    BinaryWriter out(path);
    out.bytes(kSnapshotMagic, 8);
    out.u32(kFormatVersion);
    out.u64(static_cast<std::uint64_t>(s.node_count()));
    out.u64(static_cast<std::uint64_t>(s.snapshot_count()));
    out.f64(s.dt);
    out.f64(s.theta.ca);
    out.f64(s.theta.ratio);
    out.f64(s.ref_length);
    out.vector(s.initial_positions);
    out.matrix(s.displacements);
    out.matrix(s.velocities);
}

void write_snapshot_csv_bundle(const SnapshotSet& s, const std::filesystem::path& dir) {
    validate(s);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    }
    csv::write_pairs(dir / "meta.csv",
                     {{"n_nodes", std::to_string(s.node_count())},
                      {"N", std::to_string(s.snapshot_count())},
                      {"dt", csv::format_double(s.dt)},
                      {"ca", csv::format_double(s.theta.ca)},
                      {"ratio", csv::format_double(s.theta.ratio)},
                      {"ref_length", csv::format_double(s.ref_length)},
                      {"frame", s.frame == Frame::lab ? "lab" : "centroid"},
                      {"velocities", s.derived_velocities ? "derived" : "stored"}});
    csv::write_matrix(dir / "X.csv", s.initial_positions);
    csv::write_matrix(dir / "U.csv", s.displacements);
    csv::write_matrix(dir / "V.csv", s.velocities);
}

void validate(const RomRecord& r) {
    const Eigen::Index d = r.modes.rows();
    const Eigen::Index k = r.modes.cols();
    if (k < 1) {
        throw ValidationError("modes: truncation rank must be >= 1");
    }
    if (d < 3 || d % 3 != 0) {
        throw ValidationError("modes: row count must be a positive multiple of 3");
    }
    if (r.a_mu.rows() != k || r.a_mu.cols() != k) {
        throw ValidationError("a_mu: must be K x K with K = modes.cols()");
    }
    if (r.alpha0.size() != k || r.beta0.size() != k) {
        throw ValidationError("alpha0/beta0: length must equal the truncation rank");
    }
    if (r.initial_positions.size() != d) {
        throw ValidationError("initial_positions: length must equal 3 * n_nodes");
    }
    if (r.mu < 0.0 || !std::isfinite(r.mu)) {
        throw ValidationError("mu: must be nonnegative and finite");
    }
    require_positive(r.dt, "dt");
    require_positive(r.ref_length, "ref_length");
    require_finite_matrix(r.modes, "modes");
    require_finite_matrix(r.a_mu, "a_mu");
    require_finite_matrix(r.initial_positions, "initial_positions");
    const double ortho = (r.modes.transpose() * r.modes - Matrix::Identity(k, k))
                             .cwiseAbs()
                             .maxCoeff();
    if (ortho > 1e-8) {
        throw ValidationError("modes: columns are not orthonormal (deviation " +
                              std::to_string(ortho) + ")");
    }
}

RomRecord read_rom_record(const std::filesystem::path& path) {
    BinaryReader in(path);
    check_magic(in, kRecordMagic, "ROMREC1");

    const std::uint64_t n_nodes = in.u64();
    const std::uint64_t k = in.u64();
    if (n_nodes < 1 || n_nodes > kMaxNodes || k < 1 || k > 100'000) {
        throw IoError("implausible dimensions in header: " + path.string());
    }
    if (in.file_size() != rom_record_file_bytes(static_cast<Eigen::Index>(n_nodes),
                                                static_cast<Eigen::Index>(k))) {
        throw IoError("file size does not match header dimensions: " + path.string());
    }

    RomRecord r;
    r.dt = in.f64();
    r.theta.ca = in.f64();
    r.theta.ratio = in.f64();
    r.ref_length = in.f64();
    r.mu = in.f64();
    r.eps = in.f64();
    const auto d = static_cast<Eigen::Index>(3 * n_nodes);
    const auto rank = static_cast<Eigen::Index>(k);
    r.modes = in.matrix(d, rank);
    r.a_mu = in.matrix(rank, rank);
    r.alpha0 = in.vector(rank);
    r.beta0 = in.vector(rank);
    r.initial_positions = in.vector(d);
    validate(r);
    return r;
}

void write_rom_record(const RomRecord& r, const std::filesystem::path& path) {
    validate(r);
    BinaryWriter out(path);
    out.bytes(kRecordMagic, 8);
    out.u32(kFormatVersion);
    out.u64(static_cast<std::uint64_t>(r.modes.rows() / 3));
    out.u64(static_cast<std::uint64_t>(r.rank()));
    out.f64(r.dt);
    out.f64(r.theta.ca);
    out.f64(r.theta.ratio);
    out.f64(r.ref_length);
    out.f64(r.mu);
    out.f64(r.eps);
    out.matrix(r.modes);
    out.matrix(r.a_mu);
    out.vector(r.alpha0);
    out.vector(r.beta0);
    out.vector(r.initial_positions);
}

std::uint64_t snapshot_file_bytes(Eigen::Index n_nodes, Eigen::Index n_snapshots) {
    const auto d = static_cast<std::uint64_t>(3 * n_nodes);
    const auto n = static_cast<std::uint64_t>(n_snapshots);
    return 8 + 4 + 2 * 8 + 4 * 8 + 8 * (d + 2 * d * n);
}

std::uint64_t rom_record_file_bytes(Eigen::Index n_nodes, Eigen::Index rank) {
    const auto d = static_cast<std::uint64_t>(3 * n_nodes);
    const auto k = static_cast<std::uint64_t>(rank);
    return 8 + 4 + 2 * 8 + 6 * 8 + 8 * (d * k + k * k + 2 * k + d);
}

}  // namespace rom
