// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Unit tests for chain contraction, boundary conversion and Choi canonical form.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mpuforge/corpus.hpp"
#include "mpuforge/errors.hpp"
#include "mpuforge/json_io.hpp"
#include "mpuforge/mpo.hpp"

using namespace mpuforge;

namespace {

CMatrix mcz_target(std::size_t N) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << N);
    CMatrix t = CMatrix::Identity(dim, dim);
    t(0, 0) = -1.0;
    return t;
}

/// Brute-force Tr[b A...A]: explicit sum over every bond configuration.
CMatrix traced_by_enumeration(const MpoTensor &A, const CMatrix &b, std::size_t N) {
    const int d = A.d_in, D = A.D_left;
    const auto dim = static_cast<Eigen::Index>(std::pow(d, N));
    CMatrix U = CMatrix::Zero(dim, dim);
    std::vector<int> bonds(N + 1, 0);
    const auto configs = static_cast<long>(std::pow(D, N + 1));
    for (long c = 0; c < configs; ++c) {
        long x = c;
        for (std::size_t k = 0; k <= N; ++k) {
            bonds[k] = static_cast<int>(x % D);
            x /= D;
        }
        const cplx weight = b(bonds[N], bonds[0]);
        if (weight == cplx(0.0))
            continue;
        CMatrix term = CMatrix::Ones(1, 1);
        for (std::size_t k = 0; k < N; ++k)
            term = kron(term, A.physical(bonds[k], bonds[k + 1]));
        U += weight * term;
    }
    return U;
}

/// Normalized Choi vector reshaped across cut k, built directly from the definition.
CMatrix choi_reshape(const CMatrix &U, int d, std::size_t N, std::size_t k) {
    const auto rows = static_cast<Eigen::Index>(std::pow(d * d, k));
    const auto cols = static_cast<Eigen::Index>(std::pow(d * d, N - k));
    CMatrix m(rows, cols);
    const auto dim = U.rows();
    for (Eigen::Index I = 0; I < dim; ++I)
        for (Eigen::Index J = 0; J < dim; ++J) {
            // interleave (i_s, j_s) pairs, site 1 slowest
            Eigen::Index idx = 0, i = I, j = J;
            std::vector<Eigen::Index> pairs(N);
            for (std::size_t s = N; s-- > 0;) {
                pairs[s] = (i % d) * d + (j % d);
                i /= d;
                j /= d;
            }
            for (std::size_t s = 0; s < N; ++s)
                idx = idx * d * d + pairs[s];
            m(idx / cols, idx % cols) = U(I, J) / std::sqrt(static_cast<double>(dim));
        }
    return m;
}

MpoTensor random_tensor(int d, int D, std::mt19937_64 &rng) {
    MpoTensor t(d, d, D, D);
    const CMatrix r = random_matrix(static_cast<Eigen::Index>(t.entries.size()), 1, rng);
    for (std::size_t k = 0; k < t.entries.size(); ++k)
        t.entries[k] = r(static_cast<Eigen::Index>(k), 0);
    return t;
}

} // namespace

TEST(Contract, IdentityChain) {
    EXPECT_EQ(max_abs(contract(mpu_identity(2).chain(3)) - CMatrix::Identity(8, 8)), 0.0);
}

TEST(Contract, MulticontrolZ) {
    for (std::size_t N = 1; N <= 5; ++N)
        EXPECT_LT(max_abs(contract(mpu_multicontrol_z().chain(N)) - mcz_target(N)), 1e-14) << N;
}

TEST(Contract, ProductChain) {
    std::mt19937_64 rng(1);
    const CMatrix u1 = random_unitary(2, rng), u2 = random_unitary(3, rng);
    EXPECT_LT(max_abs(contract(mpu_product({u1, u2})) - kron(u1, u2)), 1e-14);
}

TEST(Contract, CapExceeded) { EXPECT_THROW(contract(mpu_identity(2).chain(13)), ResourceError); }

TEST(Contract, BondMismatch) {
    MpoChain c = mpu_multicontrol_z().chain(2);
    c.tensors[1] = MpoTensor(2, 2, 3, 2);
    EXPECT_THROW(contract(c), ShapeError);
}

TEST(IsUnitary, IdentityScaledAndLeeYang) {
    const UnitarityReport id = is_unitary(mpu_identity(2).chain(3));
    EXPECT_TRUE(id.unitary);
    EXPECT_EQ(id.residual, 0.0);
    MpoChain scaled = mpu_identity(2).chain(2);
    for (cplx &x : scaled.tensors[0].entries)
        x *= 2.0;
    EXPECT_FALSE(is_unitary(scaled).unitary);
    const UnitarityReport ly = is_unitary(lee_yang_mpu(M_PI / 2, 0.0).open().chain(2));
    EXPECT_TRUE(ly.unitary);
    EXPECT_LE(ly.residual, 1e-9);
}

TEST(BondRank, Discriminates) {
    EXPECT_TRUE(check_assumption1(mpu_identity(2)));
    EXPECT_TRUE(check_assumption1(mpu_multicontrol_z()));
    EXPECT_FALSE(check_assumption1(mpu_redundant_bond()));
    EXPECT_FALSE(check_assumption1(mpu_redundant_bond(), kDefaultTol, 2));
}

TEST(BondRank, LeeYangNeedsTwoSiteBlocks) {
    const UniformMpu ly = lee_yang_mpu(M_PI / 2, 0.0).open();
    EXPECT_FALSE(check_assumption1(ly, kDefaultTol, 1));
    EXPECT_TRUE(check_assumption1(ly, kDefaultTol, 2));
}

TEST(BoundaryToOpen, IdentityBoundaryGivesTrace) {
    UniformMpu u;
    u.bulk = MpoTensor(2, 2, 3, 3);
    for (int i = 0; i < 2; ++i)
        for (int m = 0; m < 3; ++m)
            u.bulk(i, i, m, m) = 1.0;
    u.b = CMatrix::Identity(3, 3);
    const CMatrix U = contract(boundary_to_open(u).chain(3));
    EXPECT_LT(max_abs(U / 3.0 - CMatrix::Identity(8, 8)), 1e-15);
}

TEST(BoundaryToOpen, LeeYangMatchesTracedForm) {
    const LeeYangMpu ly = lee_yang_mpu(M_PI / 2, 0.0);
    const UniformMpu open = boundary_to_open(ly.traced);
    EXPECT_EQ(open.bulk.D_left, 36);
    const CMatrix oracle = traced_by_enumeration(ly.traced.bulk, ly.traced.b, 2);
    EXPECT_LT(max_abs(contract(open.chain(2)) - oracle), 1e-12);
}

TEST(BoundaryToOpen, RandomDiagonalBoundaryAllN) {
    std::mt19937_64 rng(2);
    UniformMpu u;
    u.bulk = random_tensor(2, 2, rng);
    u.b = random_matrix(2, 1, rng).col(0).asDiagonal();
    const UniformMpu open = boundary_to_open(u);
    for (std::size_t N = 1; N <= 4; ++N) {
        const CMatrix oracle = traced_by_enumeration(u.bulk, u.b, N);
        EXPECT_LT(max_abs(contract(open.chain(N)) - oracle), 1e-12 * std::max(1.0, max_abs(oracle))) << N;
        EXPECT_LT(max_abs(contract_traced(u.bulk, u.b, N) - oracle), 1e-12 * std::max(1.0, max_abs(oracle)));
    }
}

TEST(RestrictToReachable, LeeYangKeepsOperator) {
    const LeeYangMpu ly = lee_yang_mpu(0.3, 1.1);
    const UniformMpu open = ly.open();
    EXPECT_EQ(open.bulk.D_left, 14);
    for (std::size_t N = 1; N <= 3; ++N)
        EXPECT_LT(max_abs(contract(open.chain(N)) - contract(boundary_to_open(ly.traced).chain(N))), 1e-12);
}

TEST(ChoiCanonicalize, IdentityAndProduct) {
    const SchmidtData id = choi_canonicalize(mpu_identity(2).chain(3));
    for (const RVector &s : id.schmidt) {
        ASSERT_EQ(s.size(), 1);
        EXPECT_NEAR(s(0), 1.0, 1e-14);
    }
    EXPECT_NEAR(id.s_min, 1.0, 1e-14);
    std::mt19937_64 rng(3);
    const SchmidtData pr = choi_canonicalize(mpu_product({random_unitary(2, rng), random_unitary(2, rng)}));
    ASSERT_EQ(pr.schmidt.size(), 1u);
    EXPECT_EQ(pr.schmidt[0].size(), 1);
}

TEST(ChoiCanonicalize, MulticontrolZMatchesDenseChoiSvd) {
    const std::size_t N = 4;
    const MpoChain c = mpu_multicontrol_z().chain(N);
    const SchmidtData data = choi_canonicalize(c);
    const CMatrix U = contract(c);
    double dense_min = 1.0;
    for (std::size_t k = 1; k < N; ++k) {
        const RVector &s = data.schmidt[k - 1];
        EXPECT_NEAR(s.squaredNorm(), 1.0, 1e-12);
        const RVector dense = svd(choi_reshape(U, 2, N, k)).singular_values;
        const auto r = static_cast<Eigen::Index>(numerical_rank(choi_reshape(U, 2, N, k)));
        ASSERT_EQ(s.size(), r);
        EXPECT_LT((s - dense.head(r)).cwiseAbs().maxCoeff(), 1e-12);
        dense_min = std::min(dense_min, dense(r - 1));
    }
    EXPECT_NEAR(data.s_min, dense_min, 1e-12);
    // Library reshaping agrees with the direct definition.
    EXPECT_LT(max_abs(choi_cut_matrix(U, 2, N, 2) - choi_reshape(U, 2, N, 2)), 1e-15);
}

TEST(ChoiCanonicalize, LeftCanonicalAndSameOperator) {
    std::mt19937_64 rng(4);
    const MpoChain c = random_mpu_chain(4, 2, rng, 1);
    const SchmidtData data = choi_canonicalize(c);
    for (const MpoTensor &t : data.canonical.tensors) {
        CMatrix g = CMatrix::Zero(t.D_right, t.D_right);
        for (int i = 0; i < t.d_out; ++i)
            for (int j = 0; j < t.d_in; ++j)
                g += t.bond(i, j).adjoint() * t.bond(i, j);
        EXPECT_LT(max_abs(g / t.d_in - CMatrix::Identity(t.D_right, t.D_right)), 1e-12);
    }
    EXPECT_LT(phase_invariant_distance(contract(c), contract(data.canonical)), 1e-12);
}

TEST(ChoiCanonicalize, Idempotent) {
    const SchmidtData a = choi_canonicalize(mpu_multicontrol_z().chain(4));
    const SchmidtData b = choi_canonicalize(a.canonical);
    for (std::size_t k = 0; k < a.schmidt.size(); ++k)
        EXPECT_LT((a.schmidt[k] - b.schmidt[k]).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SchmidtBoundQ, Values) {
    EXPECT_NEAR(schmidt_bound_q(choi_canonicalize(mpu_identity(2).chain(3))).q, 1.0, 1e-12);
    std::mt19937_64 rng(5);
    EXPECT_NEAR(schmidt_bound_q(choi_canonicalize(mpu_product({random_unitary(2, rng), random_unitary(2, rng)}))).q,
                1.0, 1e-12);
    const SchmidtData data = choi_canonicalize(mpu_multicontrol_z().chain(4));
    const SchmidtBound b = schmidt_bound_q(data);
    for (double qk : b.q_k)
        EXPECT_LE(qk, std::sqrt(2.0) / data.s_min + 1e-10);
}

TEST(ApplyGauge, ContractionInvariant) {
    std::mt19937_64 rng(6);
    const MpoChain c = mpu_multicontrol_z().chain(4);
    for (std::size_t k = 0; k < 3; ++k) {
        const CMatrix X = CMatrix::Identity(2, 2) + 0.4 * random_matrix(2, 2, rng);
        EXPECT_LT(max_abs(contract(apply_gauge(c, k, X)) - contract(c)), 1e-12);
    }
}

TEST(Corpus, AllUnitaryAtSmallN) {
    std::mt19937_64 rng(7);
    std::vector<MpoChain> chains;
    for (std::size_t N : {2, 3, 4}) {
        chains.push_back(mpu_identity(3).chain(N));
        chains.push_back(mpu_multicontrol_z().chain(N));
        chains.push_back(mpu_redundant_bond().chain(N));
        chains.push_back(lee_yang_mpu(M_PI / 2, 0.0).open().chain(N));
        chains.push_back(mpu_conjugated_site(N, 1, random_unitary(2, rng)));
        chains.push_back(random_mpu_chain(N, 2, rng));
    }
    for (const MpoChain &c : chains)
        EXPECT_LE(is_unitary(c).residual, 1e-9);
}

TEST(ChainJson, RoundTripBitExact) {
    std::mt19937_64 rng(8);
    const MpoChain c = random_mpu_chain(3, 2, rng);
    const MpoChain back = chain_from_json(json::parse(chain_to_json(c).dump()));
    ASSERT_EQ(back.size(), c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
        EXPECT_EQ(back.tensors[k].entries, c.tensors[k].entries);
    EXPECT_EQ(back.l, c.l);
    EXPECT_EQ(back.r, c.r);
}

TEST(ChainJson, RejectsBadShape) {
    json j = chain_to_json(mpu_multicontrol_z().chain(2));
    j["sites"][0]["entries"].erase(0);
    EXPECT_THROW(chain_from_json(j), Error);
}
