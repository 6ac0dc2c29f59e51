// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpuforge {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

SvdResult svd(const CMatrix &m) {
    if (m.size() == 0)
        return {CMatrix(m.rows(), 0), RVector(0), CMatrix(m.cols(), 0)};
    Eigen::BDCSVD<CMatrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw NumericalError("svd: decomposition did not converge");
    // Eigen already returns singular values in decreasing order.
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

namespace {

double hermiticity_defect(const CMatrix &m) { return max_abs(m - m.adjoint()); }

} // namespace

CMatrix sqrtm_psd(const CMatrix &m, double tol) {
    require_square(m, "sqrtm_psd");
    require_finite(m, "sqrtm_psd");
    const double scale = std::max(1.0, max_abs(m));
    if (hermiticity_defect(m) > tol * scale)
        throw ShapeError("sqrtm_psd: matrix is not Hermitian within tolerance (defect " +
                         std::to_string(hermiticity_defect(m)) + ")");
    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success)
        throw NumericalError("sqrtm_psd: eigendecomposition failed");
    RVector w = es.eigenvalues();
    const double wscale = std::max(1.0, w.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) < -tol * wscale)
            throw NotPsdError("sqrtm_psd: eigenvalue " + std::to_string(w(i)) +
                              " below -tol");
        w(i) = std::sqrt(std::max(0.0, w(i)));
    }
    const CMatrix &v = es.eigenvectors();
    return v * w.asDiagonal() * v.adjoint();
}

double trace_norm(const CMatrix &m) {
    if (m.size() == 0)
        return 0.0;
    return svd(m).singular_values.sum();
}

std::size_t numerical_rank(const CMatrix &m, double rel_tol) {
    if (m.size() == 0)
        return 0;
    const RVector s = svd(m).singular_values;
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    return static_cast<std::size_t>((s.array() > rel_tol * s(0)).count());
}

double max_abs(const CMatrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_residual(const CMatrix &u) {
    require_square(u, "unitarity_residual");
    return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

double phase_invariant_distance(const CMatrix &u, const CMatrix &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw ShapeError("phase_invariant_distance: shape mismatch");
    const cplx overlap = (u.adjoint() * v).trace();
    // Clamped: rounding can push |Tr| marginally above dim.
    return std::max(0.0, 1.0 - std::abs(overlap) / static_cast<double>(u.rows()));
}

double phase_aligned_error(const CMatrix &u, const CMatrix &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw ShapeError("phase_aligned_error: shape mismatch");
    const cplx overlap = (u.adjoint() * v).trace();
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
    return max_abs(v - phase * u);
}

void require_square(const CMatrix &m, const char *what) {
    if (m.rows() != m.cols())
        throw ShapeError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_finite(const CMatrix &m, const char *what) {
    if (!m.allFinite())
        throw ValidationError(std::string(what) + ": non-finite entry");
}

CMatrix complete_to_unitary(const CMatrix &v) {
    const Eigen::Index n = v.rows(), k = v.cols();
    if (k > n)
        throw ShapeError("complete_to_unitary: more columns than rows");
    Eigen::HouseholderQR<CMatrix> qr(v);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    // The QR span of the first k columns equals span(v); overwrite them with v
    // itself so the completion reproduces the requested columns exactly.
    q.leftCols(k) = v;
    return q;
}

CMatrix Reflector::matrix() const {
    const Eigen::Index n = v.size();
    return phase * (CMatrix::Identity(n, n) - 2.0 * v * v.adjoint());
}

void Reflector::apply(CMatrix &x) const {
    x -= 2.0 * v * (v.adjoint() * x);
    x *= phase;
}

Reflector reflector_to(const CVector &t) {
    const double nrm = t.norm();
    if (std::abs(nrm - 1.0) > 1e-10)
        throw PreconditionError("reflector_to: target must be a unit vector");
    Reflector r;
    const double a0 = std::abs(t(0));
    const cplx e = a0 > 0.0 ? t(0) / a0 : cplx(1.0);
    r.phase = -e;
    CVector x = std::conj(r.phase) * t; // x_0 = -|t_0| <= 0
    x(0) = -a0;
    CVector w = -x;
    w(0) += 1.0;
    r.v = w / w.norm();
    return r;
}

CMatrix inverse_hermitian_pd(const CMatrix &m, double tol) {
    require_square(m, "inverse_hermitian_pd");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
    const RVector &w = es.eigenvalues();
    const double wmax = w.cwiseAbs().maxCoeff();
    if (w.minCoeff() <= tol * wmax)
        throw PreconditionError("inverse_hermitian_pd: eigenvalue " + std::to_string(w.minCoeff()) +
                                " below floor " + std::to_string(tol * wmax) +
                                " (rank-deficient cap)");
    const CMatrix &v = es.eigenvectors();
    return v * w.cwiseInverse().asDiagonal() * v.adjoint();
}

} // namespace mpuforge
