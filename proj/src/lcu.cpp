// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/lcu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mpuforge {

UnitaryFactor UnitaryFactor::adjoint() const {
    UnitaryFactor out = *this;
    if (is_reflector)
        out.reflector.phase = std::conj(reflector.phase);
    else
        out.dense = dense.adjoint();
    return out;
}

CMatrix LcuDecomposition::unitary(std::size_t i) const {
    const Eigen::Index pads = dim / base_dim;
    const CMatrix I = CMatrix::Identity(pads, pads);
    return kron(left.matrix(), I) * diagonals.at(i).asDiagonal() * kron(right.matrix(), I);
}

CMatrix LcuDecomposition::reconstruct() const {
    const Eigen::Index pads = dim / base_dim;
    const CMatrix I = CMatrix::Identity(pads, pads);
    CVector diag = CVector::Zero(dim);
    for (std::size_t i = 0; i < size(); ++i)
        diag += coefficients[i] * diagonals[i];
    return kron(left.matrix(), I) * diag.asDiagonal() * kron(right.matrix(), I);
}

CVector LcuDecomposition::prepare_amplitudes() const {
    CVector amp(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i)
        amp(static_cast<Eigen::Index>(i)) = std::sqrt(coefficients[i] / C);
    return amp / amp.norm();
}

CMatrix merge_operator(const CapPair &caps, double tol) {
    const CMatrix Li = inverse_hermitian_pd(caps.L, tol);
    const CMatrix Ri = inverse_hermitian_pd(caps.R, tol);
    const CMatrix w = Ri * Li.transpose();
    const Eigen::Index Dr = w.rows(), Dl = w.cols();
    CMatrix M = CMatrix::Zero(Dr * Dl, Dr * Dl);
    for (Eigen::Index b = 0; b < Dr; ++b)
        for (Eigen::Index a = 0; a < Dl; ++a)
            M(0, b * Dl + a) = w(b, a);
    return M;
}

LcuDecomposition lcu_decompose(const CMatrix &m, double tol) {
    require_square(m, "lcu_decompose");
    require_finite(m, "lcu_decompose");
    const Eigen::Index n = m.rows();
    if (n == 0 || max_abs(m) == 0.0)
        throw PreconditionError("lcu_decompose: zero matrix has no decomposition");
    const SvdResult dec = svd(m);
    const RVector &s = dec.singular_values;
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol * s(0))
        ++rank;

    LcuDecomposition out;
    out.dim = n;
    out.base_dim = n;
    if (rank == n && s(0) - s(n - 1) <= tol * s(0)) {
        // m is proportional to a unitary: one term.
        out.left.dense = dec.u * dec.v.adjoint();
        out.right.dense = CMatrix::Identity(n, n);
        out.coefficients = {s(0)};
        out.diagonals = {CVector::Ones(n)};
        out.C = s(0);
        return out;
    }
    if (rank == 1) {
        // m = s |u><v|: both factors are Householder reflectors sending e_0 to u, v.
        out.left.is_reflector = true;
        out.left.reflector = reflector_to(dec.u.col(0));
        UnitaryFactor rv;
        rv.is_reflector = true;
        rv.reflector = reflector_to(dec.v.col(0));
        out.right = rv.adjoint();
    } else {
        out.left.dense = complete_to_unitary(dec.u.leftCols(rank));
        out.right.dense = complete_to_unitary(dec.v.leftCols(rank)).adjoint();
    }
    // diag(s) restricted to the rank = sum_i (s_i / 2) (1 + Z_i), Z_i = 2 e_i e_i^T - 1.
    for (Eigen::Index i = 0; i < rank; ++i) {
        CVector z = -CVector::Ones(n);
        z(i) = 1.0;
        out.coefficients.push_back(0.5 * s(i));
        out.diagonals.push_back(CVector::Ones(n));
        out.coefficients.push_back(0.5 * s(i));
        out.diagonals.push_back(z);
    }
    out.C = s.head(rank).sum();
    return out;
}

double PaddingPlan::theta() const { return std::asin(std::min(1.0, 1.0 / padded_C)); }

double PaddingPlan::success_amplitude() const { return std::sin((2.0 * rotations + 1.0) * theta()); }

double PaddingPlan::product_weight() const {
    double w = C;
    for (double phi : pad_phases)
        w *= std::cos(phi) + std::sin(phi);
    return w;
}

namespace {

double padded_for(int l) {
    return 1.0 / std::sin(std::numbers::pi / (2.0 * (2.0 * l + 1.0)));
}

} // namespace

PaddingPlan plan_padding(double C) {
    if (!(C >= 1.0 - 1e-12) || !std::isfinite(C))
        throw PreconditionError("plan_padding: C must be >= 1 (got " + std::to_string(C) + ")");
    const double Ce = std::max(C, 1.0);
    PaddingPlan plan;
    plan.C = Ce;
    int l = 0;
    while (padded_for(l) < Ce * (1.0 - 1e-13)) {
        ++l;
        if (l > 100000000)
            throw PreconditionError("plan_padding: C too large");
    }
    plan.rotations = l;
    plan.padded_C = padded_for(l);
    double ratio = plan.padded_C / Ce;
    if (ratio <= 1.0 + 1e-13)
        return plan; // exact hit, no padding
    const double half_log2 = 0.5 * std::log(2.0);
    const int k = std::max(1, static_cast<int>(std::ceil(std::log(ratio) / half_log2 - 1e-12)));
    for (int j = 0; j + 1 < k; ++j) {
        plan.pad_phases.push_back(std::numbers::pi / 4.0);
        ratio /= std::sqrt(2.0);
    }
    // cos phi + sin phi = sqrt(2) sin(phi + pi/4) = ratio.
    const double f = std::clamp(ratio, 1.0, std::sqrt(2.0));
    plan.pad_phases.push_back(std::asin(f / std::sqrt(2.0)) - std::numbers::pi / 4.0);
    return plan;
}

CMatrix pad_factor(double phi) {
    CMatrix p = CMatrix::Zero(2, 2);
    p(0, 0) = 1.0;
    p(1, 1) = std::exp(cplx(0.0, -2.0 * phi));
    return p;
}

LcuDecomposition pad_lcu(const LcuDecomposition &lcu, const PaddingPlan &plan) {
    LcuDecomposition out = lcu;
    for (double phi : plan.pad_phases) {
        const cplx ph = std::exp(cplx(0.0, -phi));
        // e^{-i phi}(cos 1 + i sin Z) = cos * (e^{-i phi} 1) + sin * (i e^{-i phi} Z)
        const CVector d_cos = (CVector(2) << ph, ph).finished();
        const CVector d_sin = (CVector(2) << cplx(0, 1) * ph, -cplx(0, 1) * ph).finished();
        LcuDecomposition next;
        next.dim = out.dim * 2;
        next.base_dim = out.base_dim;
        next.left = out.left;
        next.right = out.right;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const CVector &d = out.diagonals[i];
            for (int t = 0; t < 2; ++t) {
                const CVector &pd = t == 0 ? d_cos : d_sin;
                CVector nd(next.dim);
                for (Eigen::Index x = 0; x < d.size(); ++x) {
                    nd(2 * x) = d(x) * pd(0);
                    nd(2 * x + 1) = d(x) * pd(1);
                }
                next.diagonals.push_back(nd);
                next.coefficients.push_back(out.coefficients[i] *
                                            (t == 0 ? std::cos(phi) : std::sin(phi)));
            }
        }
        // Drop zero-weight terms (phi = 0 exactly).
        LcuDecomposition pruned = next;
        pruned.coefficients.clear();
        pruned.diagonals.clear();
        for (std::size_t i = 0; i < next.size(); ++i)
            if (next.coefficients[i] > 0.0) {
                pruned.coefficients.push_back(next.coefficients[i]);
                pruned.diagonals.push_back(next.diagonals[i]);
            }
        out = std::move(pruned);
    }
    out.C = 0.0;
    for (double c : out.coefficients)
        out.C += c;
    return out;
}

CMatrix padded_target(const CMatrix &m, const PaddingPlan &plan) {
    CMatrix out = m;
    for (double phi : plan.pad_phases)
        out = kron(out, pad_factor(phi));
    return out;
}

} // namespace mpuforge
