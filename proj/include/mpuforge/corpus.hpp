// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Generator MPUs with known dense targets.
 *
 * Lee-Yang physical levels (0-based): the five levels are the direct sum of the
 * 2x2 and 3x3 matrix blocks of the algebra,
 *
 *     level 0, 1  <- 2x2 block, rows 1, 2
 *     level 2, 3, 4 <- 3x3 block, rows 1, 2, 3
 *
 * The bulk bond space (D = 6) is the direct sum 1 (+) 2 (+) 3 of the trivial
 * block, the tau_e block and the tau_sigma block; the boundary operator is
 * b = diag(1, (u_e - 1) 1_2, u_sigma 1_3), so U_N = 1 + (u_e - 1) O_e + u_sigma O_sigma.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mpuforge/mpo.hpp"

namespace mpuforge {

/// x = e * tau_e + sigma * tau_sigma in the Lee-Yang fusion algebra (identity tau_e).
struct FusionElement {
    cplx e{0.0, 0.0};
    cplx sigma{0.0, 0.0};

    static FusionElement tau_e() { return {1.0, 0.0}; }
    static FusionElement tau_sigma() { return {0.0, 1.0}; }
    FusionElement operator*(const FusionElement &o) const;
    FusionElement operator+(const FusionElement &o) const { return {e + o.e, sigma + o.sigma}; }
    FusionElement operator-(const FusionElement &o) const { return {e - o.e, sigma - o.sigma}; }
    FusionElement operator*(cplx c) const { return {c * e, c * sigma}; }
    [[nodiscard]] FusionElement star() const { return {std::conj(e), std::conj(sigma)}; }
    [[nodiscard]] double distance(const FusionElement &o) const {
        return std::max(std::abs(e - o.e), std::abs(sigma - o.sigma));
    }
};

/// zeta = ((sqrt 5 - 1) / 2)^{1/2}.
double lee_yang_zeta();
/// Projector p = (zeta^2 tau_e + tau_sigma) / sqrt 5.
FusionElement lee_yang_projector();
/// u = e^{i alpha} p + e^{i beta} (tau_e - p).
FusionElement lee_yang_unit(double alpha, double beta);

struct LeeYangMpu {
    double alpha = 0.0, beta = 0.0;
    MpoTensor A_e;     ///< 5x5 physical, bond 2
    MpoTensor A_sigma; ///< 5x5 physical, bond 3
    UniformMpu traced; ///< bulk D = 6 with boundary operator b
    /// Open-boundary form: reachable part of the boundary conversion.
    [[nodiscard]] UniformMpu open() const;
};

UniformMpu mpu_identity(int d);
MpoChain mpu_product(const std::vector<CMatrix> &units);
UniformMpu mpu_multicontrol_z();
LeeYangMpu lee_yang_mpu(double alpha, double beta);

/// Fusion residuals of the periodic MPOs O_e, O_sigma at N sites (N <= 4).
struct FusionCheck {
    double sigma_squared = 0.0; ///< max |O_s^2 - O_e - O_s|
    double e_idempotent = 0.0;  ///< max |O_e^2 - O_e|
    double e_sigma = 0.0;       ///< max |O_e O_s - O_s|
};
FusionCheck lee_yang_fusion_mpo_check(std::size_t N);

/// Exact N = 2 chain of a d^2 x d^2 unitary (SVD across the cut, zero values dropped).
MpoChain mpu_from_two_site_unitary(const CMatrix &u, int d, double tol = kDefaultTol);

/// Multi-control-Z with an extra bond state that the boundaries never reach.
UniformMpu mpu_redundant_bond();

/// Multi-control-Z chain with site @p site conjugated by the single-site unitary @p v.
MpoChain mpu_conjugated_site(std::size_t N, std::size_t site, const CMatrix &v);

/// Haar-random unitary.
CMatrix random_unitary(Eigen::Index n, std::mt19937_64 &rng);
/// Random complex Gaussian matrix.
CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng);

/// Random exactly unitary chain: neighbouring pairs from random two-site unitaries,
/// a leftover site from a random single-site unitary.  @p offset shifts the pairing.
MpoChain random_mpu_chain(std::size_t N, int d, std::mt19937_64 &rng, std::size_t offset = 0);

/// Named corpus entries for the command-line tool.
struct CorpusEntry {
    std::string name;
    bool uniform = true;
    UniformMpu mpu;  ///< uniform entries (open form)
    MpoChain chain;  ///< N-site chain (both kinds)
};
std::vector<std::string> corpus_names();
/// Names: identity, multicontrol-z, lee-yang, redundant-bond, product, perturbed-mcz, two-site-random.
CorpusEntry corpus_entry(const std::string &name, std::size_t N, double alpha = 1.5707963267948966,
                         double beta = 0.0, std::uint64_t seed = 7);

} // namespace mpuforge
