// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Unit tests for merge plans: reflections, Grover steps and deterministic merges.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "mpuforge/amplification.hpp"
#include "mpuforge/compiler.hpp"
#include "mpuforge/corpus.hpp"
#include "mpuforge/errors.hpp"

using namespace mpuforge;

namespace {

/// Dense bookkeeping for the registers one merge touches (physical registers are slowest).
struct Frame {
    const RegisterTable *regs;
    std::vector<int> order;
    Eigen::Index total = 1, anc = 1;
    std::map<int, std::pair<Eigen::Index, Eigen::Index>> slot; // id -> (stride, dim)

    Frame(const RegisterTable &r, std::vector<int> o) : regs(&r), order(std::move(o)) {
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Eigen::Index dim = regs->at(*it).dim;
            slot[*it] = {total, dim};
            total *= dim;
            if (regs->at(*it).kind != RegisterKind::Physical)
                anc *= dim;
        }
    }
    [[nodiscard]] Eigen::Index phys() const { return total / anc; }
    [[nodiscard]] CVector input(Eigen::Index J) const {
        CVector x = CVector::Zero(total);
        x(J * anc) = 1.0;
        return x;
    }
    [[nodiscard]] CVector apply(const NodePtr &n, const CVector &x) const { return apply_state(n, x, *regs, order); }
    /// Component with register @p id equal to zero.
    [[nodiscard]] CVector zero_part(const CVector &x, int id) const {
        CVector y = x;
        const auto [stride, dim] = slot.at(id);
        for (Eigen::Index i = 0; i < y.size(); ++i)
            if ((i / stride) % dim != 0)
                y(i) = 0.0;
        return y;
    }
    /// Rows: physical outputs with every ancilla zero.
    [[nodiscard]] CVector physical(const CVector &x) const {
        CVector p(phys());
        for (Eigen::Index J = 0; J < phys(); ++J)
            p(J) = x(J * anc);
        return p;
    }
};

/// M = 1 on a qubit written as 1/2 (1 + Z) + 1/2 (1 - Z) split into four terms: C = 2.
LcuDecomposition four_term_identity() {
    LcuDecomposition lcu;
    lcu.dim = lcu.base_dim = 2;
    lcu.left.dense = CMatrix::Identity(2, 2);
    lcu.right.dense = CMatrix::Identity(2, 2);
    const double signs[4][2] = {{1, 1}, {1, -1}, {1, 1}, {-1, 1}};
    for (const auto &s : signs) {
        lcu.coefficients.push_back(0.5);
        CVector d(2);
        d << s[0], s[1];
        lcu.diagonals.push_back(d);
    }
    lcu.C = 2.0;
    return lcu;
}

CMatrix mcz_target(std::size_t N) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << N);
    CMatrix t = CMatrix::Identity(dim, dim);
    t(0, 0) = -1.0;
    return t;
}

} // namespace

TEST(MergePlan, FullSubspaceReflectionsCoincide) {
    std::mt19937_64 rng(40);
    RegisterTable regs;
    const int a = regs.add(RegisterKind::Physical, 2, "a");
    const LcuDecomposition lcu = four_term_identity();
    ASSERT_LT(max_abs(lcu.reconstruct() - CMatrix::Identity(2, 2)), 1e-15);
    const NodePtr child = make_dense(regs, {a}, random_unitary(2, rng));
    const MergePlan plan = build_merge_plan(regs, lcu, plan_padding(2.0), child, {}, {a});
    EXPECT_EQ(plan.rotations, 1);
    const std::vector<int> order = plan.order(regs);
    EXPECT_LT(max_abs(to_unitary(plan.reflect_psi, regs, order) - to_unitary(plan.reflect_phi, regs, order)), 1e-14);
}

TEST(MergePlan, FullSubspaceRotationByTwoTheta) {
    std::mt19937_64 rng(41);
    RegisterTable regs;
    const int a = regs.add(RegisterKind::Physical, 2, "a");
    const MergePlan plan = build_merge_plan(regs, four_term_identity(), plan_padding(2.0),
                                            make_dense(regs, {a}, random_unitary(2, rng)), {}, {a});
    const Frame f(regs, plan.order(regs));
    ASSERT_EQ(f.total, 8);
    const CVector psi = random_matrix(2, 1, rng).col(0).normalized();
    CVector Psi = CVector::Zero(8);
    Psi(0) = psi(0);
    Psi(4) = psi(1);
    const CVector UPsi = f.apply(plan.U, Psi);
    // sin(theta) = 1/2 after one application of U ...
    EXPECT_NEAR(f.zero_part(UPsi, plan.ancilla).norm(), 0.5, 1e-12);
    // ... and G turns the angle theta = pi/6 into 3 theta = pi/2.
    const CVector GUPsi = f.apply(plan.G, UPsi);
    EXPECT_NEAR(f.zero_part(GUPsi, plan.ancilla).norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(Psi.dot(GUPsi)), 1.0, 1e-12);
    const MergeOutcome o = deterministic_merge(plan, regs, Psi);
    EXPECT_NEAR(o.success_amplitude, 1.0, 1e-12);
    EXPECT_NEAR(std::abs(Psi.dot(o.state)), 1.0, 1e-12);
}

TEST(MergePlan, UnitWeightAppliesOperatorDirectly) {
    std::mt19937_64 rng(42);
    RegisterTable regs;
    const int a = regs.add(RegisterKind::Physical, 2, "a");
    const int b = regs.add(RegisterKind::Physical, 2, "b");
    const CMatrix M = random_unitary(4, rng);
    const LcuDecomposition lcu = lcu_decompose(M);
    ASSERT_EQ(lcu.size(), 1u);
    const MergePlan plan = build_merge_plan(regs, lcu, plan_padding(lcu.C),
                                            make_dense(regs, {a, b}, CMatrix::Identity(4, 4)), {}, {a, b});
    EXPECT_EQ(plan.rotations, 0);
    EXPECT_EQ(plan.ancilla, -1);
    EXPECT_LT(max_abs(to_unitary(plan.U, regs, {a, b}) - M), 1e-13);
}

TEST(MergePlan, MismatchedPaddingRejected) {
    RegisterTable regs;
    const int a = regs.add(RegisterKind::Physical, 2, "a");
    EXPECT_THROW(build_merge_plan(regs, four_term_identity(), plan_padding(3.0),
                                  make_dense(regs, {a}, CMatrix::Identity(2, 2)), {}, {a}),
                 PreconditionError);
}

TEST(MulticontrolZMerge, RotationsMatchPadding) {
    const CompileResult r = compile_uniform(mpu_multicontrol_z(), 2);
    ASSERT_EQ(r.merges.size(), 1u);
    const MergeRecord &m = r.merges[0];
    EXPECT_NEAR(m.C, 2.0, 1e-12);
    EXPECT_EQ(m.rotations, plan_padding(m.C).rotations);
    EXPECT_EQ(m.rotations, 1);
}

TEST(MulticontrolZMerge, GroverStepUnitary) {
    const CompileResult r = compile_uniform(mpu_multicontrol_z(), 2);
    const CMatrix G = grover_step(*r.merges[0].plan, r.circuit.registers);
    EXPECT_LE(unitarity_residual(G), 1e-12);
}

TEST(MulticontrolZMerge, DeterministicOnEveryBasisState) {
    const CompileResult r = compile_uniform(mpu_multicontrol_z(), 2);
    const MergePlan &plan = *r.merges[0].plan;
    const Frame f(r.circuit.registers, plan.order(r.circuit.registers));
    ASSERT_EQ(f.phys(), 4);
    CMatrix action(4, 4);
    for (Eigen::Index J = 0; J < 4; ++J) {
        const MergeOutcome o = deterministic_merge(plan, r.circuit.registers, f.apply(plan.child, f.input(J)));
        EXPECT_NEAR(o.success_amplitude, 1.0, 1e-10);
        action.col(J) = f.physical(o.state);
    }
    EXPECT_LE(phase_aligned_error(mcz_target(2), action), 1e-10);
}

TEST(MulticontrolZMerge, AmplitudeOrthogonalityAndReflections) {
    std::mt19937_64 rng(43);
    const CompileResult r = compile_uniform(mpu_multicontrol_z(), 2);
    const MergePlan &p = *r.merges[0].plan;
    const Frame f(r.circuit.registers, p.order(r.circuit.registers));
    auto in_subspace = [&] {
        const CVector c = random_matrix(f.phys(), 1, rng).col(0).normalized();
        CVector x = CVector::Zero(f.total);
        for (Eigen::Index J = 0; J < f.phys(); ++J)
            x(J * f.anc) = c(J);
        return f.apply(p.child, x);
    };
    for (int t = 0; t < 5; ++t) {
        const CVector Psi = in_subspace(), other = in_subspace();
        const CVector UPsi = f.apply(p.U, Psi);
        CVector Phi = f.zero_part(UPsi, p.ancilla);
        const double s = Phi.norm();
        EXPECT_NEAR(s, 1.0 / p.padding.padded_C, 1e-10);
        Phi /= s;
        const double c = std::sqrt(1.0 - s * s);
        const CVector PhiPerp = (UPsi - s * Phi) / c;
        const CVector PsiPerp = f.apply(p.U_dagger, c * Phi - s * PhiPerp);
        EXPECT_LT(std::abs(other.dot(PsiPerp)), 1e-10);
        EXPECT_LT((f.apply(p.reflect_phi, Phi) - Phi).norm(), 1e-10);
        EXPECT_LT((f.apply(p.reflect_phi, PhiPerp) + PhiPerp).norm(), 1e-10);
        EXPECT_LT((f.apply(p.reflect_psi, Psi) - Psi).norm(), 1e-10);
        EXPECT_LT((f.apply(p.reflect_psi, PsiPerp) + PsiPerp).norm(), 1e-10);
    }
}

TEST(MulticontrolZMerge, InputOutsideSubspaceRejected) {
    const CompileResult r = compile_uniform(mpu_multicontrol_z(), 2);
    const MergePlan &plan = *r.merges[0].plan;
    const Frame f(r.circuit.registers, plan.order(r.circuit.registers));
    // A bare basis state is not in the image of the two child isometries.
    EXPECT_THROW(deterministic_merge(plan, r.circuit.registers, f.input(0)), PreconditionError);
}

TEST(MulticontrolZMerge, MergedBlockIsIsometry) {
    const CompileResult r = compile_uniform(mpu_multicontrol_z(), 4);
    for (const MergeRecord &m : r.merges) {
        if (m.level != 1)
            continue;
        const Frame f(r.circuit.registers, order_for(r.circuit.registers, m.node->support));
        CMatrix cols(f.total, f.phys());
        for (Eigen::Index J = 0; J < f.phys(); ++J)
            cols.col(J) = f.apply(m.node, f.input(J));
        EXPECT_LE(isometry_residual(cols), 1e-9);
        EXPECT_LE(weight_outside_zero(StateBatch(cols), r.circuit.registers, f.order,
                                      std::vector<int>{m.ancilla}),
                  1e-10);
    }
}

TEST(IdentityMerge, LeavesStateUnchanged) {
    const CompileResult r = compile_uniform(mpu_identity(2), 2);
    const SimulationReport s = simulate(r.circuit, CMatrix::Identity(4, 4));
    EXPECT_LT(max_abs(s.action - CMatrix::Identity(4, 4)), 1e-12);
    EXPECT_LE(s.leakage, 1e-12);
}

TEST(LeeYangMerge, MatchesDenseContraction) {
    const UniformMpu ly = lee_yang_mpu(M_PI / 2, 0.0).open();
    CompileOptions opts;
    opts.blocking = 0;
    CompileResult r = compile_uniform(ly, 2, opts);
    const SimulationReport s = simulate(r.circuit, contract(ly.chain(2)));
    EXPECT_LE(s.max_error, 1e-9);
    EXPECT_LE(s.leakage, 1e-9);
    measure_merge_success(r, 8);
    for (const MergeRecord &m : r.merges)
        EXPECT_NEAR(m.measured_success, 1.0, 1e-10);
}
