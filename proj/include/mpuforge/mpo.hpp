// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Matrix-product operators: storage, dense contraction, unitarity and bond-rank
 * checks, boundary-operator conversion and the Choi-state canonical form.
 *
 * Index convention (repo-wide): a site tensor A^{ij}_{mn} has physical output i,
 * physical input j, left bond m and right bond n, stored row-major in (i,j,m,n).
 * The N-site operator is U = l^T A^{..} A^{..} ... A^{..} r, where the physical
 * index of site 1 is the slowest index of U.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mpuforge/linalg.hpp"

namespace mpuforge {

/// Dense dimension cap for contractions (MPUFORGE_DIM_CAP overrides the default 4096).
std::size_t default_dim_cap();

struct MpoTensor {
    int d_out = 0;
    int d_in = 0;
    int D_left = 0;
    int D_right = 0;
    std::vector<cplx> entries; ///< row-major (i, j, m, n)

    MpoTensor() = default;
    MpoTensor(int d_out_, int d_in_, int D_left_, int D_right_);

    [[nodiscard]] std::size_t index(int i, int j, int m, int n) const {
        return ((static_cast<std::size_t>(i) * d_in + j) * D_left + m) * D_right + n;
    }
    cplx &operator()(int i, int j, int m, int n) { return entries[index(i, j, m, n)]; }
    [[nodiscard]] const cplx &operator()(int i, int j, int m, int n) const {
        return entries[index(i, j, m, n)];
    }
    /// Physical operator sum_{ij} A^{ij}_{mn} |i><j| for fixed bonds.
    [[nodiscard]] CMatrix physical(int m, int n) const;
    /// Bond matrix (A^{ij})_{mn} for fixed physical indices.
    [[nodiscard]] CMatrix bond(int i, int j) const;
    /// Throws ShapeError if entries size disagrees with the dimensions.
    void validate() const;
};

struct MpoChain {
    std::vector<MpoTensor> tensors;
    CVector l; ///< left boundary, length D_left of the first tensor
    CVector r; ///< right boundary, length D_right of the last tensor

    [[nodiscard]] std::size_t size() const { return tensors.size(); }
    /// Throws ShapeError on any bond or boundary mismatch.
    void validate() const;
    /// Product of physical input dimensions.
    [[nodiscard]] std::size_t input_dim() const;
    /// Largest internal bond dimension (1 when N = 1).
    [[nodiscard]] int max_bond() const;
};

/// Uniform-bulk MPU given by one bulk tensor and either open boundaries (l, r)
/// or a boundary operator b (traced form U_N = Tr[b A...A]).
struct UniformMpu {
    std::string name;
    MpoTensor bulk;
    CVector l;
    CVector r;
    CMatrix b;

    [[nodiscard]] bool is_open() const { return l.size() > 0 && r.size() > 0; }
    [[nodiscard]] bool has_boundary_operator() const { return b.size() > 0; }
    /// N-site open chain; requires the open form.
    [[nodiscard]] MpoChain chain(std::size_t N) const;
};

/// Dense operator of the chain.  Throws ResourceError when the input dimension exceeds cap.
CMatrix contract(const MpoChain &chain, std::size_t dim_cap = 0);

/// Dense operator of the traced form Tr[b A...A] (N sites).
CMatrix contract_traced(const MpoTensor &bulk, const CMatrix &b, std::size_t N,
                        std::size_t dim_cap = 0);

struct UnitarityReport {
    bool unitary = false;
    double residual = 0.0; ///< max |U^dagger U - 1|
};
UnitarityReport is_unitary(const MpoChain &chain, double tol = 1e-9, std::size_t dim_cap = 0);

struct Assumption1Report {
    bool ok = false;
    int bond_dim = 0;
    int blocking = 1;
    std::size_t rank_left = 0;  ///< rank of the l-capped block, rows (I,J), columns bond
    std::size_t rank_right = 0; ///< rank of the r-capped block
};

/// Rows (I, J) = (outputs, inputs) of the m-site block, columns = right bond:
/// X_{(I,J), n} = (l^T A^{i1 j1} ... A^{im jm})_n.
CMatrix left_capped_block(const MpoTensor &bulk, const CVector &l, int m);
/// Rows (I, J), columns = left bond: Y_{(I,J), n} = (A^{i1 j1} ... A^{im jm} r)_n.
CMatrix right_capped_block(const MpoTensor &bulk, const CVector &r, int m);

/// Bond-rank test on m-site blocks (m = 1 is the single-site statement).
Assumption1Report assumption1_report(const UniformMpu &mpu, double tol = kDefaultTol, int m = 1);
bool check_assumption1(const UniformMpu &mpu, double tol = kDefaultTol, int m = 1);

/// Open form of a b-form MPU: bulk 1_D (x) A, l_(a,b) = b_ab, r_(a,b) = delta_ab.
UniformMpu boundary_to_open(const UniformMpu &mpu);

/// Removes bond states that are unreachable from l or cannot reach r through the
/// sparsity pattern of the bulk tensor.  Exact (structural) reduction.
UniformMpu restrict_to_reachable(const UniformMpu &mpu);

struct SchmidtData {
    std::vector<RVector> schmidt; ///< per cut k = 1..N-1, descending, sum of squares 1
    double s_min = 1.0;
    MpoChain canonical; ///< left-canonical chain with trivial boundaries, same operator
};

/// Choi-state canonical form: left-canonical tensors (1/d) sum A^dagger A = 1 and
/// Schmidt values of the normalized Choi vector at every cut.
SchmidtData choi_canonicalize(const MpoChain &chain, double tol = kDefaultTol);

struct SchmidtBound {
    double q = 1.0;           ///< max_k sqrt(sum_i s_{k,i}^{-2})
    double bound = 1.0;       ///< sqrt(D) / s_min with D the largest canonical bond
    std::vector<double> q_k;  ///< per cut
};
SchmidtBound schmidt_bound_q(const SchmidtData &data);

/// Inserts X, X^{-1} on the bond between sites k and k+1 (0-based k).
MpoChain apply_gauge(const MpoChain &chain, std::size_t k, const CMatrix &X);

/// Normalized Choi vector d^{-N/2} vec(U) reshaped across cut k: rows = sites 1..k
/// (pairs (i,j) row-major per site), columns = remaining sites.
CMatrix choi_cut_matrix(const CMatrix &U, int d, std::size_t N, std::size_t k);

} // namespace mpuforge
