// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Merge operators, their exact decomposition into a positive combination of
 * unitaries with total weight equal to the trace norm, and phase padding that
 * makes the amplification angle hit pi/2 after an integer number of rotations.
 *
 * Every term shares the factorization W_i = (left (x) 1) diag(d_i) (right (x) 1),
 * where left/right act on the unpadded target space and the diagonals d_i act
 * on target (x) pad qubits.  This keeps circuits built from the decomposition
 * cheap to simulate.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "mpuforge/isometry.hpp"
#include "mpuforge/linalg.hpp"

namespace mpuforge {

/// A unitary stored either densely or as a phased Householder reflector.
struct UnitaryFactor {
    bool is_reflector = false;
    CMatrix dense;
    Reflector reflector;

    [[nodiscard]] Eigen::Index dim() const { return is_reflector ? reflector.dim() : dense.rows(); }
    [[nodiscard]] CMatrix matrix() const { return is_reflector ? reflector.matrix() : dense; }
    [[nodiscard]] UnitaryFactor adjoint() const;
};

struct LcuDecomposition {
    std::vector<double> coefficients; ///< c_i > 0
    double C = 0.0;                   ///< sum of coefficients
    Eigen::Index dim = 0;             ///< dimension of every W_i
    Eigen::Index base_dim = 0;        ///< dimension acted on by left/right
    UnitaryFactor left;
    UnitaryFactor right;
    std::vector<CVector> diagonals; ///< unit-modulus diagonals, one per term

    [[nodiscard]] std::size_t size() const { return coefficients.size(); }
    /// Dense W_i.
    [[nodiscard]] CMatrix unitary(std::size_t i) const;
    /// sum_i c_i W_i.
    [[nodiscard]] CMatrix reconstruct() const;
    /// Normalized prepare amplitudes sqrt(c_i / C).
    [[nodiscard]] CVector prepare_amplitudes() const;
};

/// M = |0,0><w| on (right leg of the left block, left leg of the right block) with
/// w_{ba} = (R^{-1} (L^{-1})^T)_{ba}; throws PreconditionError for singular caps.
CMatrix merge_operator(const CapPair &caps, double tol = kDefaultTol);

/// Exact decomposition with sum c_i = ||m||_1; throws PreconditionError for m = 0.
LcuDecomposition lcu_decompose(const CMatrix &m, double tol = kDefaultTol);

struct PaddingPlan {
    double C = 1.0;                 ///< unpadded weight
    std::vector<double> pad_phases; ///< phi_j in [0, pi/4], one per padding qubit
    double padded_C = 1.0;          ///< 1 / sin(pi / (2(2l+1)))
    int rotations = 0;              ///< l

    [[nodiscard]] double theta() const;
    /// sin((2l+1) theta) -- equals 1 for a valid plan.
    [[nodiscard]] double success_amplitude() const;
    /// C * prod_j (cos phi_j + sin phi_j).
    [[nodiscard]] double product_weight() const;
};

/// Smallest l, then fewest padding qubits, with padded_C >= C and padded_C / C <= sqrt(2)^k.
PaddingPlan plan_padding(double C);

/// Single-qubit padding factor e^{-i phi}(cos phi 1 + i sin phi Z) = diag(1, e^{-2 i phi}).
CMatrix pad_factor(double phi);

/// Decomposition of M (x) pad_factor(phi_1) (x) ... with pad qubits as the fastest indices.
LcuDecomposition pad_lcu(const LcuDecomposition &lcu, const PaddingPlan &plan);

/// Dense M (x) pad factors, for checks.
CMatrix padded_target(const CMatrix &m, const PaddingPlan &plan);

} // namespace mpuforge
