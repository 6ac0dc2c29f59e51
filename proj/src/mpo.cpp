// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/mpo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace mpuforge {

std::size_t default_dim_cap() {
    if (const char *env = std::getenv("MPUFORGE_DIM_CAP")) {
        char *end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<std::size_t>(v);
    }
    return std::size_t{4096};
}

namespace {

std::size_t resolve_cap(std::size_t cap) { return cap == 0 ? default_dim_cap() : cap; }

std::string dims_str(int a, int b) { return std::to_string(a) + " vs " + std::to_string(b); }

} // namespace

// ----------------------------------------------------------------------------- MpoTensor

MpoTensor::MpoTensor(int d_out_, int d_in_, int D_left_, int D_right_)
    : d_out(d_out_), d_in(d_in_), D_left(D_left_), D_right(D_right_),
      entries(static_cast<std::size_t>(d_out_) * d_in_ * D_left_ * D_right_, cplx(0.0)) {}

CMatrix MpoTensor::physical(int m, int n) const {
    CMatrix out(d_out, d_in);
    for (int i = 0; i < d_out; ++i)
        for (int j = 0; j < d_in; ++j)
            out(i, j) = (*this)(i, j, m, n);
    return out;
}

CMatrix MpoTensor::bond(int i, int j) const {
    CMatrix out(D_left, D_right);
    for (int m = 0; m < D_left; ++m)
        for (int n = 0; n < D_right; ++n)
            out(m, n) = (*this)(i, j, m, n);
    return out;
}

void MpoTensor::validate() const {
    if (d_out <= 0 || d_in <= 0 || D_left <= 0 || D_right <= 0)
        throw ShapeError("MpoTensor: all dimensions must be positive");
    if (entries.size() != static_cast<std::size_t>(d_out) * d_in * D_left * D_right)
        throw ShapeError("MpoTensor: entry count does not match dimensions");
    for (const cplx &z : entries)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ValidationError("MpoTensor: non-finite entry");
}

// ----------------------------------------------------------------------------- MpoChain

void MpoChain::validate() const {
    if (tensors.empty())
        throw ShapeError("MpoChain: no sites");
    for (const MpoTensor &t : tensors)
        t.validate();
    for (std::size_t k = 0; k + 1 < tensors.size(); ++k)
        if (tensors[k].D_right != tensors[k + 1].D_left)
            throw ShapeError("MpoChain: bond mismatch between sites " + std::to_string(k) + " and " +
                             std::to_string(k + 1) + " (" +
                             dims_str(tensors[k].D_right, tensors[k + 1].D_left) + ")");
    if (l.size() != tensors.front().D_left)
        throw ShapeError("MpoChain: left boundary length " +
                         dims_str(static_cast<int>(l.size()), tensors.front().D_left));
    if (r.size() != tensors.back().D_right)
        throw ShapeError("MpoChain: right boundary length " +
                         dims_str(static_cast<int>(r.size()), tensors.back().D_right));
}

std::size_t MpoChain::input_dim() const {
    std::size_t dim = 1;
    for (const MpoTensor &t : tensors)
        dim *= static_cast<std::size_t>(t.d_in);
    return dim;
}

int MpoChain::max_bond() const {
    int D = 1;
    for (std::size_t k = 0; k + 1 < tensors.size(); ++k)
        D = std::max(D, tensors[k].D_right);
    return D;
}

MpoChain UniformMpu::chain(std::size_t N) const {
    if (!is_open())
        throw PreconditionError("UniformMpu::chain: open boundary vectors required");
    MpoChain c;
    c.tensors.assign(N, bulk);
    c.l = l;
    c.r = r;
    c.validate();
    return c;
}

// ----------------------------------------------------------------------------- contraction

namespace {

void check_cap(const MpoChain &chain, std::size_t cap) {
    std::size_t dout = 1, din = 1;
    for (const MpoTensor &t : chain.tensors) {
        dout *= static_cast<std::size_t>(t.d_out);
        din *= static_cast<std::size_t>(t.d_in);
        if (std::max(dout, din) > cap)
            throw ResourceError("contract: physical dimension exceeds cap " + std::to_string(cap));
    }
}

// Contract the chain without the right boundary: returns one dense operator per
// open right-bond index.
std::vector<CMatrix> contract_open_right(const MpoChain &chain) {
    const MpoTensor &first = chain.tensors.front();
    std::vector<CMatrix> cur(first.D_right, CMatrix::Zero(first.d_out, first.d_in));
    for (int m = 0; m < first.D_left; ++m) {
        if (chain.l(m) == cplx(0.0))
            continue;
        for (int n = 0; n < first.D_right; ++n)
            cur[n] += chain.l(m) * first.physical(m, n);
    }
    for (std::size_t k = 1; k < chain.size(); ++k) {
        const MpoTensor &t = chain.tensors[k];
        std::vector<CMatrix> next(t.D_right,
                                  CMatrix::Zero(cur[0].rows() * t.d_out, cur[0].cols() * t.d_in));
        for (int m = 0; m < t.D_left; ++m) {
            if (cur[m].isZero(0.0))
                continue;
            for (int n = 0; n < t.D_right; ++n) {
                const CMatrix p = t.physical(m, n);
                if (p.isZero(0.0))
                    continue;
                next[n] += kron(cur[m], p);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace

CMatrix contract(const MpoChain &chain, std::size_t dim_cap) {
    chain.validate();
    check_cap(chain, resolve_cap(dim_cap));
    const std::vector<CMatrix> open = contract_open_right(chain);
    CMatrix U = CMatrix::Zero(open[0].rows(), open[0].cols());
    for (int n = 0; n < chain.r.size(); ++n)
        U += chain.r(n) * open[n];
    return U;
}

CMatrix contract_traced(const MpoTensor &bulk, const CMatrix &b, std::size_t N,
                        std::size_t dim_cap) {
    if (b.rows() != bulk.D_left || b.cols() != bulk.D_right || bulk.D_left != bulk.D_right)
        throw ShapeError("contract_traced: boundary operator must be D x D");
    const int D = bulk.D_left;
    const std::size_t cap = resolve_cap(dim_cap);
    // Tr[b A...A] = sum_{m,n} b_{nm} (A...A)_{mn}: one open contraction per left index m.
    CMatrix U;
    for (int m = 0; m < D; ++m) {
        MpoChain c;
        c.tensors.assign(N, bulk);
        c.l = CVector::Zero(D);
        c.l(m) = 1.0;
        c.r = b.col(m);
        c.validate();
        check_cap(c, cap);
        CMatrix part = contract(c, cap);
        U = (m == 0) ? part : CMatrix(U + part);
    }
    return U;
}

UnitarityReport is_unitary(const MpoChain &chain, double tol, std::size_t dim_cap) {
    const CMatrix U = contract(chain, dim_cap);
    UnitarityReport rep;
    if (U.rows() != U.cols()) {
        rep.residual = INFINITY;
        return rep;
    }
    rep.residual = unitarity_residual(U);
    rep.unitary = rep.residual <= tol;
    return rep;
}

// ---------------------------------------------------------------------------- bond-rank condition

CMatrix left_capped_block(const MpoTensor &A, const CVector &l, int m) {
    if (l.size() != A.D_left)
        throw ShapeError("left_capped_block: boundary length mismatch");
    // rows: (I, J) with I = (i1..im), J = (j1..jm); keep as a list of operators per bond.
    std::vector<CMatrix> cur(A.D_right, CMatrix::Zero(A.d_out, A.d_in));
    for (int a = 0; a < A.D_left; ++a)
        for (int n = 0; n < A.D_right; ++n)
            cur[n] += l(a) * A.physical(a, n);
    for (int s = 1; s < m; ++s) {
        std::vector<CMatrix> next(A.D_right,
                                  CMatrix::Zero(cur[0].rows() * A.d_out, cur[0].cols() * A.d_in));
        for (int a = 0; a < A.D_left; ++a)
            for (int n = 0; n < A.D_right; ++n)
                next[n] += kron(cur[a], A.physical(a, n));
        cur = std::move(next);
    }
    CMatrix X(cur[0].size(), A.D_right);
    for (int n = 0; n < A.D_right; ++n)
        for (Eigen::Index I = 0; I < cur[n].rows(); ++I)
            for (Eigen::Index J = 0; J < cur[n].cols(); ++J)
                X(I * cur[n].cols() + J, n) = cur[n](I, J);
    return X;
}

CMatrix right_capped_block(const MpoTensor &A, const CVector &r, int m) {
    if (r.size() != A.D_right)
        throw ShapeError("right_capped_block: boundary length mismatch");
    std::vector<CMatrix> cur(A.D_left, CMatrix::Zero(A.d_out, A.d_in));
    for (int a = 0; a < A.D_left; ++a)
        for (int n = 0; n < A.D_right; ++n)
            cur[a] += r(n) * A.physical(a, n);
    for (int s = 1; s < m; ++s) {
        std::vector<CMatrix> next(A.D_left,
                                  CMatrix::Zero(cur[0].rows() * A.d_out, cur[0].cols() * A.d_in));
        for (int a = 0; a < A.D_left; ++a)
            for (int n = 0; n < A.D_right; ++n)
                next[a] += kron(A.physical(a, n), cur[n]);
        cur = std::move(next);
    }
    CMatrix Y(cur[0].size(), A.D_left);
    for (int a = 0; a < A.D_left; ++a)
        for (Eigen::Index I = 0; I < cur[a].rows(); ++I)
            for (Eigen::Index J = 0; J < cur[a].cols(); ++J)
                Y(I * cur[a].cols() + J, a) = cur[a](I, J);
    return Y;
}

Assumption1Report assumption1_report(const UniformMpu &mpu, double tol, int m) {
    if (!mpu.is_open())
        throw PreconditionError("check_assumption1: open boundary vectors required");
    if (m < 1)
        throw PreconditionError("check_assumption1: blocking length must be >= 1");
    Assumption1Report rep;
    rep.bond_dim = mpu.bulk.D_left;
    rep.blocking = m;
    rep.rank_left = numerical_rank(left_capped_block(mpu.bulk, mpu.l, m), tol);
    rep.rank_right = numerical_rank(right_capped_block(mpu.bulk, mpu.r, m), tol);
    rep.ok = rep.rank_left == static_cast<std::size_t>(mpu.bulk.D_left) &&
             rep.rank_right == static_cast<std::size_t>(mpu.bulk.D_right);
    return rep;
}

bool check_assumption1(const UniformMpu &mpu, double tol, int m) {
    return assumption1_report(mpu, tol, m).ok;
}

// ----------------------------------------------------------------------------- boundary forms

UniformMpu boundary_to_open(const UniformMpu &mpu) {
    if (!mpu.has_boundary_operator())
        throw PreconditionError("boundary_to_open: boundary operator b required");
    const MpoTensor &A = mpu.bulk;
    if (A.D_left != A.D_right || mpu.b.rows() != A.D_left || mpu.b.cols() != A.D_left)
        throw ShapeError("boundary_to_open: b must be D x D with a square bulk");
    const int D = A.D_left;
    UniformMpu out;
    out.name = mpu.name;
    out.bulk = MpoTensor(A.d_out, A.d_in, D * D, D * D);
    for (int i = 0; i < A.d_out; ++i)
        for (int j = 0; j < A.d_in; ++j)
            for (int a = 0; a < D; ++a)
                for (int m = 0; m < D; ++m)
                    for (int n = 0; n < D; ++n)
                        out.bulk(i, j, a * D + m, a * D + n) = A(i, j, m, n);
    out.l = CVector::Zero(D * D);
    out.r = CVector::Zero(D * D);
    for (int a = 0; a < D; ++a) {
        for (int c = 0; c < D; ++c)
            out.l(a * D + c) = mpu.b(a, c);
        out.r(a * D + a) = 1.0;
    }
    return out;
}

UniformMpu restrict_to_reachable(const UniformMpu &mpu) {
    if (!mpu.is_open())
        throw PreconditionError("restrict_to_reachable: open boundary vectors required");
    const MpoTensor &A = mpu.bulk;
    const int D = A.D_left;
    if (A.D_right != D)
        throw ShapeError("restrict_to_reachable: square bulk required");
    std::vector<std::vector<bool>> edge(D, std::vector<bool>(D, false));
    for (int i = 0; i < A.d_out; ++i)
        for (int j = 0; j < A.d_in; ++j)
            for (int m = 0; m < D; ++m)
                for (int n = 0; n < D; ++n)
                    if (A(i, j, m, n) != cplx(0.0))
                        edge[m][n] = true;
    std::vector<bool> fwd(D), bwd(D);
    for (int a = 0; a < D; ++a) {
        fwd[a] = mpu.l(a) != cplx(0.0);
        bwd[a] = mpu.r(a) != cplx(0.0);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int m = 0; m < D; ++m)
            for (int n = 0; n < D; ++n)
                if (edge[m][n]) {
                    if (fwd[m] && !fwd[n])
                        fwd[n] = changed = true;
                    if (bwd[n] && !bwd[m])
                        bwd[m] = changed = true;
                }
    }
    std::vector<int> keep;
    for (int a = 0; a < D; ++a)
        if (fwd[a] && bwd[a])
            keep.push_back(a);
    if (keep.empty())
        throw ValidationError("restrict_to_reachable: operator is identically zero");
    const int K = static_cast<int>(keep.size());
    UniformMpu out;
    out.name = mpu.name;
    out.bulk = MpoTensor(A.d_out, A.d_in, K, K);
    out.l = CVector(K);
    out.r = CVector(K);
    for (int x = 0; x < K; ++x) {
        out.l(x) = mpu.l(keep[x]);
        out.r(x) = mpu.r(keep[x]);
    }
    for (int i = 0; i < A.d_out; ++i)
        for (int j = 0; j < A.d_in; ++j)
            for (int x = 0; x < K; ++x)
                for (int y = 0; y < K; ++y)
                    out.bulk(i, j, x, y) = A(i, j, keep[x], keep[y]);
    return out;
}

// ----------------------------------------------------------------------------- canonical form

namespace {

// Choi-MPS site tensor: physical pair p = i*d_in + j, bonds (m, n).
struct ChoiSite {
    int d_out, d_in, Dl, Dr;
    CMatrix data; ///< rows (m, p) with index m * P + p, columns n
    [[nodiscard]] int P() const { return d_out * d_in; }
};

ChoiSite to_choi(const MpoTensor &A, double scale) {
    ChoiSite s{A.d_out, A.d_in, A.D_left, A.D_right, CMatrix(A.D_left * A.d_out * A.d_in, A.D_right)};
    const int P = s.P();
    for (int i = 0; i < A.d_out; ++i)
        for (int j = 0; j < A.d_in; ++j)
            for (int m = 0; m < A.D_left; ++m)
                for (int n = 0; n < A.D_right; ++n)
                    s.data(m * P + i * A.d_in + j, n) = scale * A(i, j, m, n);
    return s;
}

MpoTensor from_choi(const ChoiSite &s, double scale) {
    MpoTensor A(s.d_out, s.d_in, s.Dl, s.Dr);
    const int P = s.P();
    for (int i = 0; i < s.d_out; ++i)
        for (int j = 0; j < s.d_in; ++j)
            for (int m = 0; m < s.Dl; ++m)
                for (int n = 0; n < s.Dr; ++n)
                    A(i, j, m, n) = scale * s.data(m * P + i * s.d_in + j, n);
    return A;
}

// Matrix with rows m and columns (p, n) -- the "right" reshape.
CMatrix right_reshape(const ChoiSite &s) {
    const int P = s.P();
    CMatrix out(s.Dl, P * s.Dr);
    for (int m = 0; m < s.Dl; ++m)
        for (int p = 0; p < P; ++p)
            for (int n = 0; n < s.Dr; ++n)
                out(m, p * s.Dr + n) = s.data(m * P + p, n);
    return out;
}

void set_from_right_reshape(ChoiSite &s, const CMatrix &mat) {
    const int P = s.P();
    s.Dl = static_cast<int>(mat.rows());
    s.data = CMatrix(s.Dl * P, s.Dr);
    for (int m = 0; m < s.Dl; ++m)
        for (int p = 0; p < P; ++p)
            for (int n = 0; n < s.Dr; ++n)
                s.data(m * P + p, n) = mat(m, p * s.Dr + n);
}

// Multiply the right bond of s by X (Dr x K).
void absorb_right(ChoiSite &s, const CMatrix &X) {
    s.data = s.data * X;
    s.Dr = static_cast<int>(X.cols());
}

// Multiply the left bond of s by X (K x Dl): new(m', p, n) = sum_m X(m', m) old(m, p, n).
void absorb_left(ChoiSite &s, const CMatrix &X) {
    CMatrix mat = X * right_reshape(s);
    set_from_right_reshape(s, mat);
}

} // namespace

SchmidtData choi_canonicalize(const MpoChain &chain, double tol) {
    chain.validate();
    const std::size_t N = chain.size();
    std::vector<ChoiSite> sites;
    sites.reserve(N);
    for (const MpoTensor &t : chain.tensors)
        sites.push_back(to_choi(t, 1.0 / std::sqrt(static_cast<double>(t.d_in))));
    // Absorb boundaries so the outer bonds are trivial.
    absorb_left(sites.front(), chain.l.transpose());
    absorb_right(sites.back(), chain.r);

    // Right-canonical sweep via QR of the adjoint of the right reshape.
    for (std::size_t k = N - 1; k >= 1; --k) {
        const CMatrix M = right_reshape(sites[k]); // Dl x (P Dr)
        Eigen::HouseholderQR<CMatrix> qr(M.adjoint());
        const Eigen::Index K = std::min(M.rows(), M.cols());
        const CMatrix Q = qr.householderQ() * CMatrix::Identity(M.cols(), K);
        const CMatrix R = qr.matrixQR().topRows(K).triangularView<Eigen::Upper>();
        set_from_right_reshape(sites[k], Q.adjoint()); // K x (P Dr), orthonormal rows
        absorb_right(sites[k - 1], R.adjoint());       // M = R^dagger Q^dagger
    }
    const double norm = sites.front().data.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw ValidationError("choi_canonicalize: chain is not normalizable (zero operator)");
    sites.front().data /= norm;

    SchmidtData out;
    out.s_min = 1.0;
    // Left-to-right SVD sweep; the Schmidt values at each cut are the singular values.
    for (std::size_t k = 0; k + 1 < N; ++k) {
        SvdResult dec = svd(sites[k].data);
        const RVector &s = dec.singular_values;
        Eigen::Index keep = 0;
        while (keep < s.size() && s(keep) > tol * s(0))
            ++keep;
        if (keep == 0)
            throw ValidationError("choi_canonicalize: vanishing Schmidt spectrum");
        RVector kept = s.head(keep);
        kept /= kept.norm();
        sites[k].data = dec.u.leftCols(keep);
        sites[k].Dr = static_cast<int>(keep);
        const CMatrix carry = kept.asDiagonal() * dec.v.leftCols(keep).adjoint();
        absorb_left(sites[k + 1], carry);
        out.s_min = std::min(out.s_min, kept.minCoeff());
        out.schmidt.push_back(kept);
    }
    const double tail = sites.back().data.norm();
    sites.back().data /= tail;

    out.canonical.tensors.reserve(N);
    for (const ChoiSite &s : sites)
        out.canonical.tensors.push_back(from_choi(s, std::sqrt(static_cast<double>(s.d_in))));
    out.canonical.l = CVector::Ones(1);
    out.canonical.r = CVector::Ones(1);
    return out;
}

SchmidtBound schmidt_bound_q(const SchmidtData &data) {
    SchmidtBound out;
    int D = 1;
    for (const RVector &s : data.schmidt) {
        const double qk = std::sqrt(s.array().inverse().square().sum());
        out.q_k.push_back(qk);
        out.q = std::max(out.q, qk);
        D = std::max(D, static_cast<int>(s.size()));
    }
    out.bound = std::sqrt(static_cast<double>(D)) / data.s_min;
    if (out.q > out.bound * (1.0 + 1e-10))
        throw NumericalError("schmidt_bound_q: q exceeds sqrt(D)/s_min");
    return out;
}

MpoChain apply_gauge(const MpoChain &chain, std::size_t k, const CMatrix &X) {
    if (k + 1 >= chain.size())
        throw PreconditionError("apply_gauge: cut index out of range");
    MpoChain out = chain;
    MpoTensor &A = out.tensors[k];
    MpoTensor &B = out.tensors[k + 1];
    if (X.rows() != A.D_right || X.cols() != A.D_right)
        throw ShapeError("apply_gauge: X must be square with the bond dimension");
    const CMatrix Xinv = X.inverse();
    MpoTensor newA(A.d_out, A.d_in, A.D_left, A.D_right);
    MpoTensor newB(B.d_out, B.d_in, B.D_left, B.D_right);
    for (int i = 0; i < A.d_out; ++i)
        for (int j = 0; j < A.d_in; ++j) {
            const CMatrix m = A.bond(i, j) * X;
            for (int a = 0; a < A.D_left; ++a)
                for (int b = 0; b < A.D_right; ++b)
                    newA(i, j, a, b) = m(a, b);
        }
    for (int i = 0; i < B.d_out; ++i)
        for (int j = 0; j < B.d_in; ++j) {
            const CMatrix m = Xinv * B.bond(i, j);
            for (int a = 0; a < B.D_left; ++a)
                for (int b = 0; b < B.D_right; ++b)
                    newB(i, j, a, b) = m(a, b);
        }
    A = std::move(newA);
    B = std::move(newB);
    return out;
}

CMatrix choi_cut_matrix(const CMatrix &U, int d, std::size_t N, std::size_t k) {
    const std::size_t dim = static_cast<std::size_t>(std::pow(d, N));
    if (static_cast<std::size_t>(U.rows()) != dim || static_cast<std::size_t>(U.cols()) != dim)
        throw ShapeError("choi_cut_matrix: operator dimension mismatch");
    const std::size_t left = static_cast<std::size_t>(std::pow(d, k));
    const std::size_t right = dim / left;
    CMatrix out(left * left, right * right);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t I = 0; I < dim; ++I)
        for (std::size_t J = 0; J < dim; ++J) {
            // Pair digits site by site: row index = interleaved (i_s, j_s) of sites 1..k.
            std::size_t rowi = 0, coli = 0, pow_r = 1, pow_c = 1;
            std::size_t Ii = I, Jj = J;
            for (std::size_t s = N; s-- > 0;) {
                const std::size_t is = Ii % d, js = Jj % d;
                Ii /= d;
                Jj /= d;
                const std::size_t pair = is * d + js;
                if (s >= k) {
                    coli += pair * pow_c;
                    pow_c *= static_cast<std::size_t>(d * d);
                } else {
                    rowi += pair * pow_r;
                    pow_r *= static_cast<std::size_t>(d * d);
                }
            }
            out(static_cast<Eigen::Index>(rowi), static_cast<Eigen::Index>(coli)) = scale * U(I, J);
        }
    return out;
}

} // namespace mpuforge
