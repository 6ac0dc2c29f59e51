// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/corpus.hpp"

#include <cmath>

#include "mpuforge/errors.hpp"

namespace mpuforge {

FusionElement FusionElement::operator*(const FusionElement &o) const {
    // tau_e tau_e = tau_e, tau_e tau_s = tau_s tau_e = tau_s, tau_s tau_s = tau_e + tau_s
    return {e * o.e + sigma * o.sigma, e * o.sigma + sigma * o.e + sigma * o.sigma};
}

double lee_yang_zeta() { return std::sqrt((std::sqrt(5.0) - 1.0) / 2.0); }

FusionElement lee_yang_projector() {
    const double z2 = std::pow(lee_yang_zeta(), 2);
    return FusionElement{z2, 1.0} * cplx(1.0 / std::sqrt(5.0));
}

FusionElement lee_yang_unit(double alpha, double beta) {
    const FusionElement p = lee_yang_projector();
    const FusionElement q = FusionElement::tau_e() - p;
    return p * std::polar(1.0, alpha) + q * std::polar(1.0, beta);
}

namespace {

/// Places the 5x5 physical operator |i><j| (1-based) at bond entry (m, n).
void put(MpoTensor &t, int m, int n, int i, int j, cplx value) { t(i - 1, j - 1, m, n) += value; }

MpoTensor lee_yang_e() {
    MpoTensor t(5, 5, 2, 2);
    put(t, 0, 0, 1, 1, 1.0);
    put(t, 1, 1, 2, 2, 1.0);
    put(t, 1, 1, 5, 5, 1.0);
    put(t, 0, 1, 3, 3, 1.0);
    put(t, 1, 0, 4, 4, 1.0);
    return t;
}

MpoTensor lee_yang_sigma() {
    const double z = lee_yang_zeta();
    const double z2 = z * z;
    MpoTensor t(5, 5, 3, 3);
    put(t, 0, 0, 1, 2, 1.0);
    put(t, 1, 1, 2, 1, 1.0);
    put(t, 0, 1, 3, 4, 1.0);
    put(t, 1, 0, 4, 3, z2);
    put(t, 0, 2, 3, 5, 1.0);
    put(t, 2, 0, 4, 5, z);
    put(t, 1, 2, 5, 3, z);
    put(t, 2, 1, 5, 4, 1.0);
    put(t, 2, 2, 2, 2, 1.0);
    put(t, 2, 2, 5, 5, -z2);
    return t;
}

/// Block-diagonal bond sum of tensors with equal physical dimensions.
MpoTensor bond_direct_sum(const std::vector<const MpoTensor *> &parts) {
    int D = 0;
    for (const MpoTensor *p : parts)
        D += p->D_left;
    const int d = parts.front()->d_out;
    MpoTensor out(d, d, D, D);
    int off = 0;
    for (const MpoTensor *p : parts) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int m = 0; m < p->D_left; ++m)
                    for (int n = 0; n < p->D_right; ++n)
                        out(i, j, off + m, off + n) = (*p)(i, j, m, n);
        off += p->D_left;
    }
    return out;
}

MpoTensor identity_tensor(int d) {
    MpoTensor t(d, d, 1, 1);
    for (int i = 0; i < d; ++i)
        t(i, i, 0, 0) = 1.0;
    return t;
}

CMatrix periodic_mpo(const MpoTensor &A, std::size_t N) {
    UniformMpu u;
    u.bulk = A;
    u.b = CMatrix::Identity(A.D_left, A.D_left);
    return contract(boundary_to_open(u).chain(N));
}

void require_unitary(const CMatrix &u, const char *what) {
    require_square(u, what);
    const double res = unitarity_residual(u);
    if (res > 1e-9)
        throw ValidationError(std::string(what) + ": input is not unitary (residual " + std::to_string(res) + ")");
}

} // namespace

UniformMpu LeeYangMpu::open() const {
    UniformMpu open = restrict_to_reachable(boundary_to_open(traced));
    open.name = traced.name;
    return open;
}

UniformMpu mpu_identity(int d) {
    if (d < 2)
        throw PreconditionError("mpu_identity: d must be at least 2");
    UniformMpu u;
    u.name = "identity";
    u.bulk = identity_tensor(d);
    u.l = CVector::Ones(1);
    u.r = CVector::Ones(1);
    return u;
}

MpoChain mpu_product(const std::vector<CMatrix> &units) {
    if (units.empty())
        throw PreconditionError("mpu_product: need at least one site");
    MpoChain c;
    for (const CMatrix &u : units) {
        require_unitary(u, "mpu_product");
        const int d = static_cast<int>(u.rows());
        MpoTensor t(d, d, 1, 1);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                t(i, j, 0, 0) = u(i, j);
        c.tensors.push_back(std::move(t));
    }
    c.l = CVector::Ones(1);
    c.r = CVector::Ones(1);
    return c;
}

UniformMpu mpu_multicontrol_z() {
    UniformMpu u;
    u.name = "multicontrol-z";
    u.bulk = MpoTensor(2, 2, 2, 2);
    for (int i = 0; i < 2; ++i)
        u.bulk(i, i, 0, 0) = 1.0;
    u.bulk(0, 0, 1, 1) = 1.0;
    u.l = CVector(2);
    u.l << 1.0, -2.0;
    u.r = CVector::Ones(2);
    return u;
}

LeeYangMpu lee_yang_mpu(double alpha, double beta) {
    LeeYangMpu ly;
    ly.alpha = alpha;
    ly.beta = beta;
    ly.A_e = lee_yang_e();
    ly.A_sigma = lee_yang_sigma();
    const MpoTensor one = identity_tensor(5);
    ly.traced.name = "lee-yang";
    ly.traced.bulk = bond_direct_sum({&one, &ly.A_e, &ly.A_sigma});
    const FusionElement u = lee_yang_unit(alpha, beta);
    CVector diag(6);
    diag << 1.0, u.e - 1.0, u.e - 1.0, u.sigma, u.sigma, u.sigma;
    ly.traced.b = diag.asDiagonal();
    return ly;
}

FusionCheck lee_yang_fusion_mpo_check(std::size_t N) {
    if (N < 1 || N > 4)
        throw PreconditionError("lee_yang_fusion_mpo_check: N must be in [1, 4]");
    const CMatrix Oe = periodic_mpo(lee_yang_e(), N);
    const CMatrix Os = periodic_mpo(lee_yang_sigma(), N);
    FusionCheck f;
    f.sigma_squared = max_abs(Os * Os - Oe - Os);
    f.e_idempotent = max_abs(Oe * Oe - Oe);
    f.e_sigma = max_abs(Oe * Os - Os);
    return f;
}

MpoChain mpu_from_two_site_unitary(const CMatrix &u, int d, double tol) {
    require_unitary(u, "mpu_from_two_site_unitary");
    if (u.rows() != static_cast<Eigen::Index>(d) * d)
        throw ShapeError("mpu_from_two_site_unitary: dimension must be d^2");
    // X[(i1, j1), (i2, j2)] = u[(i1, i2), (j1, j2)]
    CMatrix X(d * d, d * d);
    for (int i1 = 0; i1 < d; ++i1)
        for (int i2 = 0; i2 < d; ++i2)
            for (int j1 = 0; j1 < d; ++j1)
                for (int j2 = 0; j2 < d; ++j2)
                    X(i1 * d + j1, i2 * d + j2) = u(i1 * d + i2, j1 * d + j2);
    const SvdResult s = svd(X);
    const auto D = static_cast<int>(numerical_rank(X, tol));
    MpoChain c;
    MpoTensor a(d, d, 1, D), b(d, d, D, 1);
    for (int k = 0; k < D; ++k) {
        const double root = std::sqrt(s.singular_values(k));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                a(i, j, 0, k) = s.u(i * d + j, k) * root;
                b(i, j, k, 0) = std::conj(s.v(i * d + j, k)) * root;
            }
    }
    c.tensors = {a, b};
    c.l = CVector::Ones(1);
    c.r = CVector::Ones(1);
    return c;
}

UniformMpu mpu_redundant_bond() {
    const UniformMpu mcz = mpu_multicontrol_z();
    UniformMpu u;
    u.name = "redundant-bond";
    u.bulk = MpoTensor(2, 2, 3, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m)
                for (int n = 0; n < 2; ++n)
                    u.bulk(i, j, m, n) = mcz.bulk(i, j, m, n);
    for (int i = 0; i < 2; ++i)
        u.bulk(i, i, 2, 2) = 1.0; // never reached: l and r vanish on bond state 2
    u.l = CVector::Zero(3);
    u.l.head(2) = mcz.l;
    u.r = CVector::Zero(3);
    u.r.head(2) = mcz.r;
    return u;
}

MpoChain mpu_conjugated_site(std::size_t N, std::size_t site, const CMatrix &v) {
    require_unitary(v, "mpu_conjugated_site");
    MpoChain c = mpu_multicontrol_z().chain(N);
    if (site >= N || v.rows() != 2)
        throw PreconditionError("mpu_conjugated_site: bad site or single-site dimension");
    MpoTensor &t = c.tensors[site];
    for (int m = 0; m < t.D_left; ++m)
        for (int n = 0; n < t.D_right; ++n) {
            const CMatrix p = v * t.physical(m, n) * v.adjoint();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    t(i, j, m, n) = p(i, j);
        }
    return c;
}

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = g(rng);
            m(i, j) = cplx(re, g(rng));
        }
    return m;
}

CMatrix random_unitary(Eigen::Index n, std::mt19937_64 &rng) {
    const CMatrix z = random_matrix(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double a = std::abs(r(k, k));
        if (a > 0.0)
            q.col(k) *= r(k, k) / a;
    }
    return q;
}

MpoChain random_mpu_chain(std::size_t N, int d, std::mt19937_64 &rng, std::size_t offset) {
    if (N == 0)
        throw PreconditionError("random_mpu_chain: N must be positive");
    MpoChain c;
    c.l = CVector::Ones(1);
    c.r = CVector::Ones(1);
    std::size_t i = 0;
    auto single = [&]() {
        c.tensors.push_back(mpu_product({random_unitary(d, rng)}).tensors.front());
        ++i;
    };
    if (offset % 2 == 1)
        single();
    while (i < N) {
        if (i + 1 < N) {
            const MpoChain pair = mpu_from_two_site_unitary(random_unitary(d * d, rng), d);
            c.tensors.push_back(pair.tensors[0]);
            c.tensors.push_back(pair.tensors[1]);
            i += 2;
        } else {
            single();
        }
    }
    return c;
}

std::vector<std::string> corpus_names() {
    return {"identity", "multicontrol-z", "lee-yang", "redundant-bond", "product", "perturbed-mcz",
            "two-site-random"};
}

CorpusEntry corpus_entry(const std::string &name, std::size_t N, double alpha, double beta,
                         std::uint64_t seed) {
    if (N == 0)
        throw PreconditionError("corpus_entry: N must be positive");
    CorpusEntry e;
    e.name = name;
    std::mt19937_64 rng(seed);
    if (name == "identity") {
        e.mpu = mpu_identity(2);
    } else if (name == "multicontrol-z") {
        e.mpu = mpu_multicontrol_z();
    } else if (name == "lee-yang") {
        e.mpu = lee_yang_mpu(alpha, beta).open();
    } else if (name == "redundant-bond") {
        e.mpu = mpu_redundant_bond();
    } else if (name == "product") {
        e.uniform = false;
        std::vector<CMatrix> units;
        for (std::size_t i = 0; i < N; ++i)
            units.push_back(random_unitary(2, rng));
        e.chain = mpu_product(units);
        return e;
    } else if (name == "perturbed-mcz") {
        e.uniform = false;
        e.chain = mpu_conjugated_site(N, N / 2, random_unitary(2, rng));
        return e;
    } else if (name == "two-site-random") {
        e.uniform = false;
        e.chain = random_mpu_chain(N, 2, rng);
        return e;
    } else {
        throw ValidationError("unknown corpus entry '" + name + "'");
    }
    e.chain = e.mpu.chain(N);
    return e;
}

} // namespace mpuforge
