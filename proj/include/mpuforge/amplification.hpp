// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Deterministic merging: a prepare/select circuit U = B^dagger W^ctrl B that
 * block-encodes M / C, followed by l rounds of the subspace amplitude
 * amplification step G = -U R_Psi U^dagger R_Phi.
 *
 * The subspace S on which M acts isometrically is the image of the child
 * circuit V~ with its ancilla registers at |0>.  The reflection about the
 * complement is realized as V~ F V~^dagger, where F multiplies by -1 when the LCU
 * ancilla is |0> and some child ancilla or pad qubit is not |0>.
 *
 * Circuit (time order):  merge = [ V~, U, G^l, overhead ]
 *                        U     = [ B, right, diag, left, B^dagger ]
 *                        G     = [ -R_Phi, U^dagger, V~^dagger, F, V~, R_Phi, U ]
 * with R_Phi = 2|0><0|_A - 1 on the LCU ancilla A.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpuforge/circuit.hpp"
#include "mpuforge/lcu.hpp"

namespace mpuforge {

struct MergePlan {
    LcuDecomposition lcu;     ///< decomposition of M (x) pad factors
    PaddingPlan padding;
    Reflector prepare;        ///< B, with B|0> = sum_i sqrt(c_i/C)|i>
    std::vector<int> system_regs;    ///< registers M acts on (slowest first)
    std::vector<int> pad_regs;       ///< pad qubits (appended to the system)
    int ancilla = -1;                ///< LCU ancilla register, -1 when C = 1 with one term
    std::vector<int> child_ancillas; ///< registers V~ expects in |0>
    NodePtr child;                   ///< V~
    NodePtr U, U_dagger, reflect_phi, reflect_psi, F, G, merge;
    int rotations = 0;

    [[nodiscard]] double C() const { return lcu.C; }
    [[nodiscard]] double theta() const { return padding.theta(); }
    /// Every register the merge touches, in canonical order.
    [[nodiscard]] std::vector<int> order(const RegisterTable &regs) const;
};

/**
 * Builds the plan for merging with the unpadded decomposition @p lcu of M.
 * Creates the LCU ancilla and pad registers in @p regs.  @p overhead_cost is the
 * explicit linear term recorded in the merge node for the cost model.
 * Throws PreconditionError if the padding plan does not match lcu.C.
 */
MergePlan build_merge_plan(RegisterTable &regs, const LcuDecomposition &lcu,
                           const PaddingPlan &pad, NodePtr child, std::vector<int> child_ancillas,
                           std::vector<int> system_regs, std::uint64_t overhead_cost = 0,
                           const std::string &label = "merge");

/// Dense G on the plan's registers (cap 4096 by default).
CMatrix grover_step(const MergePlan &plan, const RegisterTable &regs, std::size_t dim_cap = 0);

struct MergeOutcome {
    CVector state;              ///< G^l U applied to the input
    double success_amplitude;   ///< norm of the LCU-ancilla |0> component
};

/**
 * Applies U and G^l to a state in S (x) |0>_pads |0>_A, ordered by plan.order(regs).
 * Throws PreconditionError when the input overlaps the complement of S by more than 1e-8.
 */
MergeOutcome deterministic_merge(const MergePlan &plan, const RegisterTable &regs,
                                 const CVector &state);

/// Filters the canonical register order down to @p support.
std::vector<int> order_for(const RegisterTable &regs, const std::vector<int> &support);

/// Squared norm of the components where any register in @p which is nonzero.
double weight_outside_zero(const StateBatch &s, const RegisterTable &regs,
                           const std::vector<int> &order, const std::vector<int> &which);

} // namespace mpuforge
