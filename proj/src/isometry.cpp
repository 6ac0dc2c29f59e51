// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mpuforge {

namespace {

// Gram form G_{ab} = Tr(X_a w X_b^dagger) for block operators stored as columns of X
// (rows (I, J) row-major, J fastest).  Empty w means the normalized identity.
CMatrix weighted_gram(const CMatrix &X, Eigen::Index din, const CMatrix &w) {
    if (w.size() == 0)
        return X.transpose() * X.conjugate() / static_cast<double>(din);
    if (w.rows() != din || w.cols() != din)
        throw ShapeError("cap weight must be d^m x d^m");
    const Eigen::Index dout = X.rows() / din;
    CMatrix XW(X.rows(), X.cols());
    for (Eigen::Index a = 0; a < X.cols(); ++a) {
        // Reshape column a to the (dout x din) operator, multiply by w on the right.
        Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> op(
            X.col(a).data(), dout, din);
        Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> prod = op * w;
        XW.col(a) = Eigen::Map<const CVector>(prod.data(), prod.size());
    }
    return XW.transpose() * X.conjugate();
}

void require_density(const CMatrix &w, const char *what, double tol) {
    if (w.size() == 0)
        return;
    require_square(w, what);
    if (std::abs(w.trace() - cplx(1.0)) > 1e3 * tol)
        throw PreconditionError(std::string(what) + ": weight must have unit trace");
    if (max_abs(w - w.adjoint()) > 1e3 * tol)
        throw PreconditionError(std::string(what) + ": weight must be Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (w + w.adjoint()));
    if (es.eigenvalues().minCoeff() < -1e3 * tol)
        throw PreconditionError(std::string(what) + ": weight must be positive semidefinite");
}

bool cap_full_rank(const CMatrix &C, double tol) {
    return numerical_rank(C, tol) == static_cast<std::size_t>(C.rows());
}

double iso_check_tol(double tol) { return std::max(1e-9, 100.0 * tol); }

} // namespace

CMatrix boundary_cap(const CVector &v) { return CMatrix(v); }

CMatrix left_cap_square(const MpoTensor &bulk, const CVector &l, int m, const CMatrix &sigma) {
    const CMatrix X = left_capped_block(bulk, l, m);
    const auto din = static_cast<Eigen::Index>(std::pow(bulk.d_in, m));
    return weighted_gram(X, din, sigma);
}

CMatrix right_cap_square(const MpoTensor &bulk, const CVector &r, int m, const CMatrix &tau) {
    const CMatrix Y = right_capped_block(bulk, r, m);
    const auto din = static_cast<Eigen::Index>(std::pow(bulk.d_in, m));
    return weighted_gram(Y, din, tau);
}

CapPair compute_caps_uniform(const UniformMpu &mpu, int m, const CMatrix &sigma,
                             const CMatrix &tau, double tol) {
    if (!mpu.is_open())
        throw PreconditionError("compute_caps_uniform: open boundary vectors required");
    if (m < 1)
        throw PreconditionError("compute_caps_uniform: blocking length must be >= 1");
    require_density(sigma, "sigma", tol);
    require_density(tau, "tau", tol);
    CapPair caps;
    caps.blocking = m;
    caps.L = sqrtm_psd(left_cap_square(mpu.bulk, mpu.l, m, sigma), tol);
    caps.R = sqrtm_psd(right_cap_square(mpu.bulk, mpu.r, m, tau), tol);
    caps.full_rank = cap_full_rank(caps.L, tol) && cap_full_rank(caps.R, tol);
    std::ostringstream src;
    src << "uniform m=" << m << " sigma=" << (sigma.size() ? "user" : "mixed")
        << " tau=" << (tau.size() ? "user" : "mixed");
    caps.source = src.str();

    // Single-site isometry checks with every cap combination.
    const MpoChain one = mpu.chain(1);
    const CMatrix l = boundary_cap(mpu.l), r = boundary_cap(mpu.r);
    const std::pair<const CMatrix *, const CMatrix *> combos[] = {
        {&caps.L, &caps.R}, {&l, &caps.R}, {&caps.L, &r}};
    for (const auto &[lc, rc] : combos) {
        const double res = isometry_residual(build_isometry(one, 0, 0, *lc, *rc).dense_v);
        if (res > iso_check_tol(tol))
            throw ValidationError("compute_caps_uniform: capped tensor is not an isometry (residual " +
                                  std::to_string(res) + "); input is not a unitary MPU");
    }
    return caps;
}

CapPair compute_caps_nonuniform(const MpoChain &chain, std::size_t k, const CMatrix &sigma,
                                const CMatrix &tau, double tol) {
    chain.validate();
    const std::size_t N = chain.size();
    if (k < 1 || k >= N)
        throw PreconditionError("compute_caps_nonuniform: cut index must satisfy 1 <= k < N");
    require_density(sigma, "sigma", tol);
    require_density(tau, "tau", tol);
    CMatrix L2, R2;
    if (sigma.size() == 0) {
        L2 = chain.l * chain.l.adjoint();
        for (std::size_t s = 0; s < k; ++s) {
            const MpoTensor &A = chain.tensors[s];
            CMatrix next = CMatrix::Zero(A.D_right, A.D_right);
            for (int i = 0; i < A.d_out; ++i)
                for (int j = 0; j < A.d_in; ++j) {
                    const CMatrix B = A.bond(i, j);
                    next += B.transpose() * L2 * B.conjugate();
                }
            L2 = next / static_cast<double>(A.d_in);
        }
    } else {
        MpoChain left;
        left.tensors.assign(chain.tensors.begin(), chain.tensors.begin() + static_cast<long>(k));
        left.l = chain.l;
        // Dense route: X_{(I,J),n} from the open-right contraction of sites 1..k.
        const int Dk = left.tensors.back().D_right;
        CMatrix X;
        for (int n = 0; n < Dk; ++n) {
            left.r = CVector::Zero(Dk);
            left.r(n) = 1.0;
            const CMatrix op = contract(left);
            if (n == 0)
                X = CMatrix(op.size(), Dk);
            for (Eigen::Index I = 0; I < op.rows(); ++I)
                for (Eigen::Index J = 0; J < op.cols(); ++J)
                    X(I * op.cols() + J, n) = op(I, J);
        }
        L2 = weighted_gram(X, static_cast<Eigen::Index>(left.input_dim()), sigma);
    }
    if (tau.size() == 0) {
        R2 = chain.r * chain.r.adjoint();
        for (std::size_t s = N; s-- > k;) {
            const MpoTensor &A = chain.tensors[s];
            CMatrix next = CMatrix::Zero(A.D_left, A.D_left);
            for (int i = 0; i < A.d_out; ++i)
                for (int j = 0; j < A.d_in; ++j) {
                    const CMatrix B = A.bond(i, j);
                    next += B * R2 * B.adjoint();
                }
            R2 = next / static_cast<double>(A.d_in);
        }
    } else {
        MpoChain right;
        right.tensors.assign(chain.tensors.begin() + static_cast<long>(k), chain.tensors.end());
        right.r = chain.r;
        const int Dk = right.tensors.front().D_left;
        CMatrix Y;
        for (int n = 0; n < Dk; ++n) {
            right.l = CVector::Zero(Dk);
            right.l(n) = 1.0;
            const CMatrix op = contract(right);
            if (n == 0)
                Y = CMatrix(op.size(), Dk);
            for (Eigen::Index I = 0; I < op.rows(); ++I)
                for (Eigen::Index J = 0; J < op.cols(); ++J)
                    Y(I * op.cols() + J, n) = op(I, J);
        }
        R2 = weighted_gram(Y, static_cast<Eigen::Index>(right.input_dim()), tau);
    }
    CapPair caps;
    caps.L = sqrtm_psd(L2, tol);
    caps.R = sqrtm_psd(R2, tol);
    caps.full_rank = cap_full_rank(caps.L, tol) && cap_full_rank(caps.R, tol);
    caps.blocking = 0;
    caps.source = "nonuniform cut " + std::to_string(k);
    return caps;
}

IsometryBlock build_isometry(const MpoChain &chain, std::size_t first, std::size_t last,
                             const CMatrix &left_cap, const CMatrix &right_cap,
                             std::size_t dim_cap) {
    chain.validate();
    if (first > last || last >= chain.size())
        throw PreconditionError("build_isometry: invalid site range");
    const MpoTensor &A0 = chain.tensors[first];
    const MpoTensor &An = chain.tensors[last];
    if (left_cap.rows() != A0.D_left || right_cap.rows() != An.D_right)
        throw ShapeError("build_isometry: cap dimensions do not match the bonds");
    const std::size_t cap = dim_cap == 0 ? default_dim_cap() : dim_cap;
    const auto a_dim = static_cast<int>(left_cap.cols());
    const auto b_dim = static_cast<int>(right_cap.cols());

    std::size_t dout = 1, din = 1;
    for (std::size_t s = first; s <= last; ++s) {
        dout *= static_cast<std::size_t>(chain.tensors[s].d_out);
        din *= static_cast<std::size_t>(chain.tensors[s].d_in);
    }
    if (dout * static_cast<std::size_t>(a_dim * b_dim) > cap * cap || din > cap)
        throw ResourceError("build_isometry: dense isometry exceeds the dimension cap");

    IsometryBlock blk;
    blk.first = first;
    blk.last = last;
    blk.left_cap = left_cap;
    blk.right_cap = right_cap;
    blk.left_leg = a_dim;
    blk.right_leg = b_dim;
    blk.dense_v = CMatrix::Zero(static_cast<Eigen::Index>(dout) * a_dim * b_dim,
                                static_cast<Eigen::Index>(din));

    for (int a = 0; a < a_dim; ++a) {
        // cur[n] = sum_m Lc[m,a] (A_first ... A_s)_{mn}
        std::vector<CMatrix> cur(A0.D_right, CMatrix::Zero(A0.d_out, A0.d_in));
        for (int m = 0; m < A0.D_left; ++m) {
            if (left_cap(m, a) == cplx(0.0))
                continue;
            for (int n = 0; n < A0.D_right; ++n)
                cur[n] += left_cap(m, a) * A0.physical(m, n);
        }
        for (std::size_t s = first + 1; s <= last; ++s) {
            const MpoTensor &T = chain.tensors[s];
            std::vector<CMatrix> next(T.D_right,
                                      CMatrix::Zero(cur[0].rows() * T.d_out, cur[0].cols() * T.d_in));
            for (int m = 0; m < T.D_left; ++m)
                for (int n = 0; n < T.D_right; ++n)
                    next[n] += kron(cur[m], T.physical(m, n));
            cur = std::move(next);
        }
        for (int b = 0; b < b_dim; ++b) {
            CMatrix op = CMatrix::Zero(cur[0].rows(), cur[0].cols());
            for (int n = 0; n < An.D_right; ++n)
                op += right_cap(n, b) * cur[n];
            for (Eigen::Index I = 0; I < op.rows(); ++I)
                blk.dense_v.row((I * a_dim + a) * b_dim + b) = op.row(I);
        }
    }
    return blk;
}

double isometry_residual(const CMatrix &v) {
    return max_abs(v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols()));
}

double conditioning_uniform(const CapPair &caps, double tol) {
    const CMatrix Li = inverse_hermitian_pd(caps.L, tol);
    const CMatrix Ri = inverse_hermitian_pd(caps.R, tol);
    const cplx t = (Ri * Ri * (Li * Li).transpose()).trace();
    return std::sqrt(std::max(0.0, t.real()));
}

NonuniformConditioning conditioning_nonuniform(const SchmidtData &data) {
    NonuniformConditioning out;
    for (const RVector &s : data.schmidt) {
        const double qk = std::sqrt(s.array().inverse().square().sum());
        const double bound = std::sqrt(static_cast<double>(s.size())) / data.s_min;
        if (qk > bound * (1.0 + 1e-10))
            throw NumericalError("conditioning_nonuniform: q_k exceeds sqrt(D_k)/s_min");
        out.q_k.push_back(qk);
        out.q = std::max(out.q, qk);
    }
    return out;
}

double conditioning_at_cut(const MpoChain &chain, std::size_t k, double tol) {
    return conditioning_uniform(compute_caps_nonuniform(chain, k, {}, {}, tol), tol);
}

} // namespace mpuforge
