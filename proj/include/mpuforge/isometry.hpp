// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Isometry caps.  A tensor segment sandwiched between a left cap (boundary
 * vector l or PSD matrix L) and a right cap (r or R) is an isometry V from the
 * segment's physical input to (physical output, left leg, right leg).
 *
 * Dense isometries use the output ordering (I, a, b): physical output (sites
 * left to right) slowest, then the left leg a, then the right leg b.
 *   V[(I,a,b), J] = sum_{m,n} Lc[m,a] (A...A)^{IJ}_{mn} Rc[n,b]
 * where Lc is l (one column) or L, and Rc is r or R.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mpuforge/mpo.hpp"

namespace mpuforge {

struct CapPair {
    CMatrix L;              ///< left cap (Hermitian PSD), D_l x D_l
    CMatrix R;              ///< right cap (Hermitian PSD), D_r x D_r
    bool full_rank = false; ///< rank(L) = D_l and rank(R) = D_r
    int blocking = 1;       ///< number of sites contracted into each cap
    std::string source;     ///< human-readable description of (sigma, tau, m)
};

/// Contracts of the doubled l-capped block weighted by sigma (on the block inputs):
/// L^2_{ab} = Tr(X_a sigma X_b^dagger) with X_a = (l^T A...A)_a.  Empty sigma means 1/d^m.
CMatrix left_cap_square(const MpoTensor &bulk, const CVector &l, int m, const CMatrix &sigma = {});
/// R^2_{ab} = Tr(Y_a tau Y_b^dagger) with Y_a = (A...A r)_a.
CMatrix right_cap_square(const MpoTensor &bulk, const CVector &r, int m, const CMatrix &tau = {});

/**
 * Caps for a uniform MPU from m-site blocks with input-side weights sigma, tau
 * (empty = maximally mixed).  Verifies that V_1 with caps (L,R), (l,R), (L,r) is an
 * isometry and throws ValidationError otherwise (non-unitary input).
 */
CapPair compute_caps_uniform(const UniformMpu &mpu, int m = 1, const CMatrix &sigma = {},
                             const CMatrix &tau = {}, double tol = kDefaultTol);

/**
 * Caps at cut k (1 <= k < N, between sites k and k+1, 1-based): L is the left cap of
 * a block starting at site k+1 (built from sites 1..k with sigma), R is the right
 * cap of a block ending at site k (built from sites k+1..N with tau).  Empty weights
 * are maximally mixed and use transfer matrices; explicit weights are dense.
 */
CapPair compute_caps_nonuniform(const MpoChain &chain, std::size_t k, const CMatrix &sigma = {},
                                const CMatrix &tau = {}, double tol = kDefaultTol);

struct IsometryBlock {
    std::size_t first = 0; ///< 0-based first site
    std::size_t last = 0;  ///< 0-based last site (inclusive)
    CMatrix left_cap;      ///< D x a (a = 1 for a boundary vector)
    CMatrix right_cap;     ///< D x b
    CMatrix dense_v;       ///< (d_out^n * a * b) x d_in^n
    int left_leg = 1;      ///< a
    int right_leg = 1;     ///< b
};

/// Dense isometry of sites [first..last] with the given caps (boundary vectors as one column).
IsometryBlock build_isometry(const MpoChain &chain, std::size_t first, std::size_t last,
                             const CMatrix &left_cap, const CMatrix &right_cap,
                             std::size_t dim_cap = 0);

/// max |V^dagger V - 1|.
double isometry_residual(const CMatrix &v);

/// sqrt(tr[R^{-2} (L^{-2})^T]); throws PreconditionError for singular caps.
double conditioning_uniform(const CapPair &caps, double tol = kDefaultTol);

struct NonuniformConditioning {
    std::vector<double> q_k;
    double q = 1.0;
};
/// Canonical-choice per-cut q_k = sqrt(sum s^{-2}); checks q_k <= sqrt(D_k)/s_min.
NonuniformConditioning conditioning_nonuniform(const SchmidtData &data);

/// Generic-caps q at cut k from maximally mixed weights (gauge-covariant check).
double conditioning_at_cut(const MpoChain &chain, std::size_t k, double tol = kDefaultTol);

/// Column-vector view of a boundary vector for use as a cap.
CMatrix boundary_cap(const CVector &v);

} // namespace mpuforge
