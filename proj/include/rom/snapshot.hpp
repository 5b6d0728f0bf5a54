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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace rom {

/// The two nondimensional governing parameters of a trajectory sample.
struct ParamCouple {
    double ca = 0.0;     ///< capillary number, > 0
    double ratio = 0.0;  ///< size ratio a/l, > 0
};

/// Reference frame the stored displacements were recorded in.  All math in
/// the toolkit is frame-agnostic; the flag is carried as metadata only.
enum class Frame { lab, centroid };

/// One parameter couple's trajectory data.
///
/// Column n (0-based) of `displacements` and `velocities` holds the field at
/// nondimensional time t = (n + 1) * dt; the t = 0 displacement column is
/// implicitly zero and not stored.
struct SnapshotSet {
    ParamCouple theta;
    double dt = 0.0;          ///< snapshot spacing in units of V t / l
    double ref_length = 1.0;  ///< l, the length unit
    Vector initial_positions; ///< 3 * n_nodes
    Matrix displacements;     ///< d x N, d = 3 * n_nodes
    Matrix velocities;        ///< d x N
    Frame frame = Frame::lab;
    bool derived_velocities = false;  ///< velocities came from finite differences,
                                      ///< not from the producing solver

    Eigen::Index dofs() const { return displacements.rows(); }
    Eigen::Index node_count() const { return displacements.rows() / 3; }
    Eigen::Index snapshot_count() const { return displacements.cols(); }
    double time_of(Eigen::Index col) const { return static_cast<double>(col + 1) * dt; }
};

/// Throws ValidationError naming the offending field when any invariant fails.
void validate(const SnapshotSet& s);

/// Fallback for producers that store displacements only: fills the velocity
/// matrix with first-order differences of the displacements (u^0 = 0 supplies
/// the first column) and sets the derived_velocities flag.
void derive_velocities(SnapshotSet& s);

/// Loose data-quality checks (forward-difference kinematic consistency and the
/// like).  Returns human-readable warnings; never throws on suspicious data.
std::vector<std::string> quality_warnings(const SnapshotSet& s);

/// Read a trajectory sample.  A directory is treated as a CSV bundle
/// (meta.csv, X.csv, U.csv, V.csv), a file as ROMSNAP1 binary.
SnapshotSet read_snapshot_set(const std::filesystem::path& path);

/// Write ROMSNAP1 binary.  Deterministic byte output for identical input.
void write_snapshot_set(const SnapshotSet& s, const std::filesystem::path& path);

/// Write the CSV bundle form into a directory (created if missing).
void write_snapshot_csv_bundle(const SnapshotSet& s, const std::filesystem::path& dir);

/// Compact persisted form of an identified reduced-order model.
struct RomRecord {
    ParamCouple theta;
    Matrix modes;             ///< d x K, orthonormal columns
    Matrix a_mu;              ///< K x K identified coefficient matrix
    double mu = 0.0;          ///< Tikhonov coefficient used
    double eps = 0.0;         ///< POD accuracy threshold used
    double dt = 0.0;          ///< training snapshot spacing
    Vector alpha0;            ///< K, initial reduced displacement (zero)
    Vector beta0;             ///< K, initial reduced velocity
    Vector initial_positions; ///< 3 * n_nodes
    double ref_length = 1.0;

    Eigen::Index rank() const { return a_mu.rows(); }
};

void validate(const RomRecord& r);

RomRecord read_rom_record(const std::filesystem::path& path);
void write_rom_record(const RomRecord& r, const std::filesystem::path& path);

/// Exact on-disk sizes of the two binary formats, for storage accounting.
std::uint64_t snapshot_file_bytes(Eigen::Index n_nodes, Eigen::Index n_snapshots);
std::uint64_t rom_record_file_bytes(Eigen::Index n_nodes, Eigen::Index rank);

}  // namespace rom
