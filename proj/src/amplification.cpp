// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/amplification.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mpuforge {

std::vector<int> order_for(const RegisterTable &regs, const std::vector<int> &support) {
    std::vector<int> out;
    for (int id : regs.canonical_order())
        if (std::find(support.begin(), support.end(), id) != support.end())
            out.push_back(id);
    return out;
}

std::vector<int> MergePlan::order(const RegisterTable &regs) const { return order_for(regs, merge->support); }

double weight_outside_zero(const StateBatch &s, const RegisterTable &regs,
                           const std::vector<int> &order, const std::vector<int> &which) {
    std::map<int, std::pair<std::size_t, std::size_t>> slot;
    std::size_t stride = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t dim = static_cast<std::size_t>(regs.at(*it).dim);
        slot[*it] = {stride, dim};
        stride *= dim;
    }
    double w = 0.0;
    for (Eigen::Index idx = 0; idx < s.rows(); ++idx) {
        bool outside = false;
        for (int id : which) {
            const auto &[st, dim] = slot.at(id);
            if ((static_cast<std::size_t>(idx) / st) % dim != 0) {
                outside = true;
                break;
            }
        }
        if (outside)
            w += s.row(idx).squaredNorm();
    }
    return w;
}

namespace {

NodePtr factor_node(const RegisterTable &regs, const std::vector<int> &targets,
                    const UnitaryFactor &f, const std::string &label) {
    if (f.is_reflector)
        return make_reflector(regs, targets, std::make_shared<const Reflector>(f.reflector), label);
    return make_dense(regs, targets, f.dense, label);
}

} // namespace

MergePlan build_merge_plan(RegisterTable &regs, const LcuDecomposition &lcu,
                           const PaddingPlan &pad, NodePtr child, std::vector<int> child_ancillas,
                           std::vector<int> system_regs, std::uint64_t overhead_cost,
                           const std::string &label) {
    if (std::abs(pad.C - std::max(1.0, lcu.C)) > 1e-10 * std::max(1.0, lcu.C))
        throw PreconditionError("build_merge_plan: padding plan was made for a different C");
    MergePlan plan;
    plan.padding = pad;
    plan.rotations = pad.rotations;
    plan.child = child;
    plan.child_ancillas = child_ancillas;
    plan.system_regs = system_regs;
    for (int id : system_regs)
        if (std::find(child->support.begin(), child->support.end(), id) == child->support.end())
            throw PreconditionError("build_merge_plan: M acts on a register outside the child circuit");

    std::size_t sys_dim = 1;
    for (int id : system_regs)
        sys_dim *= static_cast<std::size_t>(regs.at(id).dim);
    if (static_cast<std::size_t>(lcu.dim) != sys_dim)
        throw PreconditionError("build_merge_plan: decomposition dimension does not match registers");

    const NodePtr overhead = make_overhead(overhead_cost, label + ":linear");
    if (system_regs.empty()) {
        // Scalar merge (trivial bonds): M must be a unit-modulus number.
        if (std::abs(lcu.C - 1.0) > 1e-9)
            throw ValidationError("build_merge_plan: scalar merge operator is not of unit modulus");
        plan.lcu = lcu;
        plan.merge = make_sequence({child, overhead}, label);
        return plan;
    }
    for (std::size_t k = 0; k < pad.pad_phases.size(); ++k)
        plan.pad_regs.push_back(regs.add(RegisterKind::Pad, 2, label + ":pad" + std::to_string(k)));
    plan.lcu = pad.pad_phases.empty() ? lcu : pad_lcu(lcu, pad);
    const std::size_t H = plan.lcu.size();

    const NodePtr right = factor_node(regs, system_regs, plan.lcu.right, label + ":right");
    const NodePtr left = factor_node(regs, system_regs, plan.lcu.left, label + ":left");
    std::vector<int> diag_regs = system_regs;
    diag_regs.insert(diag_regs.end(), plan.pad_regs.begin(), plan.pad_regs.end());

    if (H == 1) {
        if (plan.rotations != 0)
            throw PreconditionError("build_merge_plan: single-term decomposition needs no rotations");
        auto d = std::make_shared<const CVector>(plan.lcu.diagonals[0]);
        plan.U = make_sequence({right, make_diagonal(regs, diag_regs, d, label + ":diag"), left},
                               label + ":U");
        plan.U_dagger = make_adjoint(plan.U);
        plan.merge = make_sequence({child, plan.U, overhead}, label);
        return plan;
    }

    plan.ancilla = regs.add(RegisterKind::LcuAncilla, static_cast<int>(H), label + ":lcu");
    diag_regs.push_back(plan.ancilla);
    const auto S = static_cast<Eigen::Index>(plan.lcu.dim);
    auto dvec = std::make_shared<CVector>(S * static_cast<Eigen::Index>(H));
    for (Eigen::Index x = 0; x < S; ++x)
        for (std::size_t i = 0; i < H; ++i)
            (*dvec)(x * static_cast<Eigen::Index>(H) + static_cast<Eigen::Index>(i)) =
                plan.lcu.diagonals[i](x);

    plan.prepare = reflector_to(plan.lcu.prepare_amplitudes());
    const NodePtr B =
        make_reflector(regs, {plan.ancilla}, std::make_shared<const Reflector>(plan.prepare), label + ":B");
    const NodePtr select = make_diagonal(regs, diag_regs, dvec, label + ":select");
    plan.U = make_sequence({B, right, select, left, make_adjoint(B)}, label + ":U");
    plan.U_dagger = make_adjoint(plan.U);

    auto phi = std::make_shared<CVector>(CVector::Constant(static_cast<Eigen::Index>(H), -1.0));
    (*phi)(0) = 1.0;
    auto minus_phi = std::make_shared<CVector>(-*phi);
    plan.reflect_phi = make_diagonal(regs, {plan.ancilla}, phi, label + ":R_phi");
    const NodePtr neg_reflect_phi = make_diagonal(regs, {plan.ancilla}, minus_phi, label + ":-R_phi");

    std::vector<int> watched = child_ancillas;
    watched.insert(watched.end(), plan.pad_regs.begin(), plan.pad_regs.end());
    if (watched.empty()) {
        // S is the whole space: R_Psi reduces to R_Phi.
        plan.reflect_psi = plan.reflect_phi;
    } else {
        plan.F = make_conditional_phase({plan.ancilla}, watched, cplx(-1.0), label + ":F");
        plan.reflect_psi =
            make_sequence({make_adjoint(child), plan.F, child, plan.reflect_phi}, label + ":R_psi");
    }
    plan.G = make_sequence({neg_reflect_phi, plan.U_dagger, plan.reflect_psi, plan.U}, label + ":G");
    plan.merge = make_sequence(
        {child, plan.U, make_repeat(plan.G, static_cast<std::uint64_t>(plan.rotations), label + ":G^l"),
         overhead},
        label);
    return plan;
}

CMatrix grover_step(const MergePlan &plan, const RegisterTable &regs, std::size_t dim_cap) {
    if (!plan.G)
        throw PreconditionError("grover_step: plan has no amplification step (single-term merge)");
    return to_unitary(plan.G, regs, plan.order(regs), dim_cap);
}

MergeOutcome deterministic_merge(const MergePlan &plan, const RegisterTable &regs,
                                 const CVector &state) {
    const std::vector<int> order = plan.order(regs);
    StateBatch s = state;
    const double norm2 = std::max(1e-300, state.squaredNorm());
    // Membership in S (x) |0>: undo V~ and look at every register that must be |0>.
    {
        StateBatch probe = s;
        apply_state(make_adjoint(plan.child), probe, regs, order);
        std::vector<int> must_be_zero = plan.child_ancillas;
        must_be_zero.insert(must_be_zero.end(), plan.pad_regs.begin(), plan.pad_regs.end());
        if (plan.ancilla >= 0)
            must_be_zero.push_back(plan.ancilla);
        const double leak = std::sqrt(weight_outside_zero(probe, regs, order, must_be_zero) / norm2);
        if (leak > 1e-8)
            throw PreconditionError("deterministic_merge: input leaves the merge subspace (overlap " +
                                    std::to_string(leak) + ")");
    }
    if (plan.U) {
        apply_state(plan.U, s, regs, order);
        if (plan.G)
            apply_state(make_repeat(plan.G, static_cast<std::uint64_t>(plan.rotations)), s, regs, order);
    }
    MergeOutcome out;
    out.state = s.col(0);
    std::vector<int> anc;
    if (plan.ancilla >= 0)
        anc.push_back(plan.ancilla);
    const double outside = weight_outside_zero(s, regs, order, anc);
    out.success_amplitude = std::sqrt(std::max(0.0, 1.0 - outside / norm2));
    return out;
}

} // namespace mpuforge
