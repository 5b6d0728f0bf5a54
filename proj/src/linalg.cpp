/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#include "rom/linalg.hpp"

#include "rom/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rom {

namespace {

void require_finite(const Matrix& m, const char* op) {
    if (m.size() == 0) {
        throw ValidationError(std::string(op) + ": empty matrix");
    }
    if (!m.allFinite()) {
        throw ValidationError(std::string(op) + ": matrix has non-finite entries");
    }
}

}  // namespace

SvdResult thin_svd(const Matrix& m) {
    require_finite(m, "thin_svd");
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericError("thin_svd: singular value iteration did not converge");
    }
    return SvdResult{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Matrix qr_pseudo_inverse(const Matrix& x) {
    require_finite(x, "qr_pseudo_inverse");
    const Eigen::Index k = x.rows();
    const Eigen::Index n = x.cols();
    if (k > n) {
        throw ValidationError("qr_pseudo_inverse: expected rows <= cols, got " +
                              std::to_string(k) + "x" + std::to_string(n));
    }

    // Householder QR of x^T (n x k); reflectors kept for the thin Q assembly.
    Matrix a = x.transpose();
    Matrix reflectors = Matrix::Zero(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        Vector v = a.col(j).tail(n - j);
        double alpha = v.norm();
        if (v(0) > 0.0) {
            alpha = -alpha;
        }
        v(0) -= alpha;
        const double vnorm = v.norm();
        if (vnorm > 0.0) {
            v /= vnorm;
            a.bottomRightCorner(n - j, k - j) -=
                2.0 * v * (v.transpose() * a.bottomRightCorner(n - j, k - j));
            reflectors.col(j).tail(n - j) = v;
        }
    }

    double max_diag = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        max_diag = std::max(max_diag, std::abs(a(j, j)));
    }
    const double threshold = 1e-12 * max_diag;
    for (Eigen::Index j = 0; j < k; ++j) {
        if (std::abs(a(j, j)) <= threshold || max_diag == 0.0) {
            throw NumericError("qr_pseudo_inverse: rank-deficient input, row " +
                               std::to_string(j) + " (|R_jj| = " + std::to_string(std::abs(a(j, j))) +
                               ")");
        }
    }

    // Thin Q: apply the stored reflectors to the first k columns of the identity.
    Matrix q = Matrix::Identity(n, k);
    for (Eigen::Index j = k - 1; j >= 0; --j) {
        const auto v = reflectors.col(j).tail(n - j);
        q.bottomRows(n - j) -= 2.0 * v * (v.transpose() * q.bottomRows(n - j));
    }

    // x^+ = Q (R^T)^-1 via a triangular solve.
    Matrix z = a.topRows(k).transpose().triangularView<Eigen::Lower>().solve(
        Matrix::Identity(k, k));
    return q * z;
}

Matrix matrix_exponential(const Matrix& m, double t) {
    if (m.rows() != m.cols()) {
        throw ValidationError("matrix_exponential: square matrix required, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    require_finite(m, "matrix_exponential");
    if (!std::isfinite(t)) {
        throw ValidationError("matrix_exponential: non-finite time");
    }

    const Eigen::Index n = m.rows();
    Matrix a = m * t;

    // Degree-13 Pade coefficients (Higham, scaling-and-squaring), normalized by
    // the leading one so that exp(0) solves to the identity exactly.
    static const double raw[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
    static const double b[] = {1.0,
                               raw[1] / raw[0],
                               raw[2] / raw[0],
                               raw[3] / raw[0],
                               raw[4] / raw[0],
                               raw[5] / raw[0],
                               raw[6] / raw[0],
                               raw[7] / raw[0],
                               raw[8] / raw[0],
                               raw[9] / raw[0],
                               raw[10] / raw[0],
                               raw[11] / raw[0],
                               raw[12] / raw[0],
                               raw[13] / raw[0]};
    const double theta13 = 5.371920351148152;

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        a *= std::ldexp(1.0, -squarings);
    }

    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    const Matrix u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * id);
    const Matrix v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    Eigen::PartialPivLU<Matrix> lu(v - u);
    Matrix f = lu.solve(v + u);
    if (!f.allFinite()) {
        throw NumericError("matrix_exponential: Pade solve produced non-finite entries");
    }
    for (int s = 0; s < squarings; ++s) {
        f = f * f;
    }
    return f;
}

Spectrum eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw ValidationError("eigenvalues: square matrix required, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    require_finite(m, "eigenvalues");
    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigenvalues: QR iteration did not converge");
    }
    return solver.eigenvalues();
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || a.rows() != b.rows()) {
        throw ValidationError("solve_spd: incompatible shapes");
    }
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success) {
        throw NumericError("solve_spd: matrix is not positive definite");
    }
    return llt.solve(b);
}

double max_real_part(const Spectrum& s) {
    double value = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        value = std::max(value, s(i).real());
    }
    return value;
}

double min_abs_eigenvalue(const Spectrum& s) {
    double value = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        value = std::min(value, std::abs(s(i)));
    }
    return value;
}

}  // namespace rom
