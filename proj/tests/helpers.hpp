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

#include <random>

namespace testutil {

inline rom::Matrix gaussian(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    rom::Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = normal(rng);
        }
    }
    return m;
}

/// Thin orthogonal factor of a random matrix (Householder QR).
inline rom::Matrix random_orthonormal(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
    const rom::Matrix g = gaussian(rows, cols, seed);
    Eigen::HouseholderQR<rom::Matrix> qr(g);
    return qr.householderQ() * rom::Matrix::Identity(rows, cols);
}

/// Random stable diagonalizable matrix: damped 2x2 rotation blocks and
/// negative reals under a mildly non-normal similarity.  Rates and
/// frequencies sit on jittered ladders so eigenvalues stay well separated; a
/// (near-)repeated eigenvalue would collapse the rank of single-trajectory
/// snapshot data.
inline rom::Matrix random_stable(Eigen::Index k, unsigned seed, double rate_max = 1.0,
                                 double freq_max = 2.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.04, 0.04);
    rom::Matrix blocks = rom::Matrix::Zero(k, k);
    const Eigen::Index levels = (k + 1) / 2;
    Eigen::Index i = 0;
    for (Eigen::Index level = 0; i < k; ++level) {
        const double f =
            levels > 1 ? static_cast<double>(level) / static_cast<double>(levels - 1) : 0.0;
        const double a = -rate_max * (0.15 + 0.85 * f) * (1.0 + jitter(rng));
        if (i + 1 < k && (level % 2 == 0 || k - i > 3)) {
            const double b = freq_max * (0.2 + 0.8 * f) * (1.0 + jitter(rng));
            blocks(i, i) = a;
            blocks(i + 1, i + 1) = a;
            blocks(i, i + 1) = b;
            blocks(i + 1, i) = -b;
            i += 2;
        } else {
            blocks(i, i) = a;
            i += 1;
        }
    }
    const rom::Matrix v = rom::Matrix::Identity(k, k) +
                          0.2 / std::sqrt(static_cast<double>(k)) * gaussian(k, k, seed + 777);
    return v * blocks * v.partialPivLu().inverse();
}

/// Exact reduced snapshots beta^n = exp(a n dt) beta0 for n = 1..count packed
/// as columns, built from the flow map.
inline rom::Matrix exact_reduced_snapshots(const rom::Matrix& a, const rom::Vector& beta0,
                                           double dt, Eigen::Index count) {
    const rom::Matrix flow = rom::matrix_exponential(a, dt);
    rom::Matrix betas(a.rows(), count);
    rom::Vector beta = beta0;
    for (Eigen::Index n = 0; n < count; ++n) {
        beta = flow * beta;
        betas.col(n) = beta;
    }
    return betas;
}

/// ReducedData straight from reduced snapshot columns (beta^1 .. beta^N).
inline rom::dmd::ReducedData reduced_data_from_betas(const rom::Matrix& betas, double dt) {
    rom::dmd::ReducedData data;
    data.dt = dt;
    const Eigen::Index n = betas.cols();
    data.x = betas.leftCols(n - 1);
    data.y = (betas.rightCols(n - 1) - betas.leftCols(n - 1)) / dt;
    const rom::SvdResult svd = rom::thin_svd(data.x);
    data.cond_x = svd.singular_values(0) / svd.singular_values(svd.singular_values.size() - 1);
    data.cond_xxt = data.cond_x * data.cond_x;
    return data;
}

}  // namespace testutil
