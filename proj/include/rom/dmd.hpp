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
#include "rom/pod.hpp"
#include "rom/snapshot.hpp"

#include <utility>
#include <vector>

namespace rom::dmd {

/// Reduced velocity data matrices for operator identification.
/// x holds the reduced velocity snapshots beta^1 .. beta^{N-1}; y holds
/// their forward differences divided by dt.
struct ReducedData {
    Matrix x;             ///< K x (N-1)
    Matrix y;             ///< K x (N-1)
    double dt = 0.0;
    double cond_x = 0.0;  ///< spectral condition number of x
    double cond_xxt = 0.0;///< condition number of x x^T (cond_x squared)
};

/// Projects the velocity snapshots onto the basis and assembles (x, y).
/// Requires N >= K + 1 and numerically full row rank of x.
ReducedData assemble_reduced_data(const SnapshotSet& s, const pod::PodBasis& basis);

/// An identified coefficient matrix together with its diagnostics.
struct IdentifiedModel {
    Matrix a_mu;                      ///< K x K
    double mu = 0.0;
    double residual_fro = 0.0;        ///< |y - a x|_F / |y|_F
    double norm_fro = 0.0;            ///< |a|_F
    Spectrum spectrum;                ///< eigenvalues of a_mu
    Spectrum symmetric_part_spectrum; ///< eigenvalues of (a_mu + a_mu^T) / 2
};

/// Unregularized least-squares operator a = y x^+, with the pseudo-inverse
/// computed along the QR route rather than the normal equations.
Matrix identify_plain(const ReducedData& data);

/// Backward-difference variant of identify_plain: minimizes
/// sum_n |(beta^{n+1} - beta^n)/dt - a beta^{n+1}|^2.  Exposed for the
/// stability analysis of the two discretizations; prefer identify_plain.
Matrix identify_plain_backward(const ReducedData& data);

/// Tikhonov-regularized identification,
/// a_mu = y x^T (x x^T + mu |x|_F^2 I)^-1, evaluated by a symmetric
/// positive definite solve rather than an explicit inverse.
IdentifiedModel identify_tikhonov(const ReducedData& data, double mu);

/// Residual-versus-norm trade-off curve over a logarithmic mu sweep.
struct LCurve {
    struct Point {
        double mu = 0.0;
        double residual = 0.0;  ///< |y - a_mu x|_F / |y|_F
        double norm = 0.0;      ///< |a_mu|_F
    };
    std::vector<Point> points;     ///< strictly increasing mu
    double selected_mu = 0.0;
    int selected_index = -1;
};

/// Sweeps mu over [mu_min, mu_max] with points_per_decade resolution and
/// selects the corner as the point of maximum discrete curvature of the
/// log-log polyline; a curve with no corner selects the smallest mu.
LCurve lcurve_sweep(const ReducedData& data, double mu_min, double mu_max,
                    int points_per_decade);

/// Relative time residual R(j) = |a x_j - y_j|_1 / |y_j|_1 per snapshot
/// column, reported against nondimensional time j * dt.
std::vector<std::pair<double, double>> time_residual(const ReducedData& data,
                                                     const Matrix& a_mu);

}  // namespace rom::dmd
