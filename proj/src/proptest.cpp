// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/proptest.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "mpuforge/amplification.hpp"
#include "mpuforge/compiler.hpp"
#include "mpuforge/corpus.hpp"
#include "mpuforge/errors.hpp"
#include "mpuforge/isometry.hpp"
#include "mpuforge/lcu.hpp"

namespace mpuforge {

bool SuiteReport::passed() const {
    for (const PropertyCase &c : cases)
        if (!c.passed)
            return false;
    return !cases.empty();
}

json SuiteReport::to_json() const {
    json j;
    j["tag"] = tag;
    j["seed"] = seed;
    j["passed"] = passed();
    j["cases"] = json::array();
    for (const PropertyCase &c : cases) {
        json e{{"descriptor", c.descriptor}, {"trivial", c.trivial}, {"seed", c.seed},
               {"tol", c.tol},               {"value", c.value},     {"passed", c.passed}};
        if (!c.error.empty())
            e["error"] = c.error;
        if (!c.counterexample.is_null())
            e["counterexample"] = c.counterexample;
        j["cases"].push_back(e);
    }
    return j;
}

std::vector<std::string> lemma_tags() {
    return {"isometry-cut",   "lcu-optimal",    "subspace-reflection", "deterministic-merge",
            "merge-depth",    "isometry-all-n", "uniform-exact",       "nonuniform-exact"};
}

namespace {

using CaseFn = std::function<double(std::mt19937_64 &, json &)>;

class Suite {
  public:
    Suite(std::string tag, std::uint64_t seed) {
        report_.tag = std::move(tag);
        report_.seed = seed;
    }

    void add(const std::string &descriptor, bool trivial, double tol, const CaseFn &fn) {
        PropertyCase c;
        c.tag = report_.tag;
        c.descriptor = descriptor;
        c.trivial = trivial;
        c.tol = tol;
        c.seed = report_.seed * 1000003ULL + report_.cases.size();
        std::mt19937_64 rng(c.seed);
        json details = json::object();
        try {
            c.value = fn(rng, details);
            c.passed = std::isfinite(c.value) && c.value <= tol;
        } catch (const std::exception &e) {
            c.error = e.what();
            c.passed = false;
        }
        if (!c.passed) {
            c.counterexample = {{"tag", c.tag}, {"descriptor", descriptor}, {"seed", c.seed},
                                {"tol", tol},   {"value", c.value},       {"details", details}};
            if (!c.error.empty())
                c.counterexample["error"] = c.error;
        }
        report_.cases.push_back(std::move(c));
    }

    SuiteReport take() { return std::move(report_); }

  private:
    SuiteReport report_;
};

// ---- shared helpers -------------------------------------------------------

double block_residual(const MpoChain &c, std::size_t j, std::size_t k) {
    const std::size_t N = c.size();
    const CMatrix left = j == 0 ? boundary_cap(c.l) : CMatrix(compute_caps_nonuniform(c, j).L);
    const CMatrix right = k + 1 == N ? boundary_cap(c.r) : CMatrix(compute_caps_nonuniform(c, k + 1).R);
    return isometry_residual(build_isometry(c, j, k, left, right).dense_v);
}

double all_blocks_residual(const MpoChain &c) {
    double worst = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
        for (std::size_t k = j; k < c.size(); ++k)
            worst = std::max(worst, block_residual(c, j, k));
    return worst;
}

CMatrix random_invertible(Eigen::Index n, std::mt19937_64 &rng) {
    return CMatrix::Identity(n, n) + 0.3 * random_matrix(n, n, rng);
}

double gauge_q_difference(const MpoChain &c, std::mt19937_64 &rng) {
    double worst = 0.0;
    MpoChain g = c;
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        g = apply_gauge(g, k, random_invertible(c.tensors[k].D_right, rng));
    for (std::size_t k = 1; k < c.size(); ++k)
        worst = std::max(worst, std::abs(conditioning_at_cut(c, k) - conditioning_at_cut(g, k)));
    return worst;
}

double lcu_error(const CMatrix &m) {
    const LcuDecomposition d = lcu_decompose(m);
    return std::max(max_abs(d.reconstruct() - m), std::abs(d.C - trace_norm(m)));
}

/// Layout of a merge: strides of every register in the plan's order.
struct MergeView {
    const RegisterTable *regs = nullptr;
    const MergePlan *plan = nullptr;
    std::vector<int> order;
    std::size_t total = 1, anc = 1;
    std::map<int, std::pair<std::size_t, std::size_t>> slot; // id -> (stride, dim)

    MergeView(const CompileResult &res, std::size_t merge_index) {
        regs = &res.circuit.registers;
        plan = res.merges.at(merge_index).plan.get();
        order = plan->order(*regs);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const auto dim = static_cast<std::size_t>(regs->at(*it).dim);
            slot[*it] = {total, dim};
            total *= dim;
            if (regs->at(*it).kind != RegisterKind::Physical)
                anc *= dim;
        }
    }
    [[nodiscard]] std::size_t phys() const { return total / anc; }

    [[nodiscard]] CVector basis_input(std::size_t J) const {
        CVector x = CVector::Zero(static_cast<Eigen::Index>(total));
        x(static_cast<Eigen::Index>(J * anc)) = 1.0;
        return x;
    }
    [[nodiscard]] CVector subspace_state(std::mt19937_64 &rng) const {
        CVector x = CVector::Zero(static_cast<Eigen::Index>(total));
        const CVector r = random_matrix(static_cast<Eigen::Index>(phys()), 1, rng).col(0).normalized();
        for (std::size_t J = 0; J < phys(); ++J)
            x(static_cast<Eigen::Index>(J * anc)) = r(static_cast<Eigen::Index>(J));
        return apply(plan->child, x);
    }
    [[nodiscard]] CVector apply(const NodePtr &n, const CVector &x) const { return apply_state(n, x, *regs, order); }
    /// Zeroes every component where one of @p which is nonzero.
    [[nodiscard]] CVector keep_zero(const CVector &x, const std::vector<int> &which) const {
        CVector y = x;
        for (Eigen::Index i = 0; i < y.size(); ++i)
            for (int id : which) {
                const auto &[st, dim] = slot.at(id);
                if ((static_cast<std::size_t>(i) / st) % dim != 0) {
                    y(i) = 0.0;
                    break;
                }
            }
        return y;
    }
    /// Physical action of a map on basis inputs, restricted to all-ancilla-zero outputs.
    [[nodiscard]] CMatrix physical_block(const std::vector<CVector> &outs) const {
        CMatrix m(static_cast<Eigen::Index>(phys()), static_cast<Eigen::Index>(outs.size()));
        for (std::size_t c = 0; c < outs.size(); ++c)
            for (std::size_t J = 0; J < phys(); ++J)
                m(static_cast<Eigen::Index>(J), static_cast<Eigen::Index>(c)) = outs[c](static_cast<Eigen::Index>(J * anc));
        return m;
    }
    /// Norm of the components where some ancilla is nonzero.
    [[nodiscard]] double leakage(const CVector &x) const {
        double w = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (static_cast<std::size_t>(i) % anc != 0)
                w += std::norm(x(i));
        return std::sqrt(w);
    }
};

/// Reflection identities and orthogonality on random states of the first merge.
double reflection_checks(const CompileResult &res, std::mt19937_64 &rng, int samples, json &details) {
    const MergeView v(res, 0);
    const MergePlan &p = *v.plan;
    if (p.ancilla < 0)
        throw PreconditionError("merge has no amplification ancilla");
    double worst = 0.0, amp_worst = 0.0, orth_worst = 0.0, refl_worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const CVector Psi = v.subspace_state(rng);
        const CVector other = v.subspace_state(rng);
        const CVector UPsi = v.apply(p.U, Psi);
        CVector Phi = v.keep_zero(UPsi, {p.ancilla});
        const double sin_theta = Phi.norm();
        amp_worst = std::max(amp_worst, std::abs(sin_theta - 1.0 / p.padding.padded_C));
        Phi /= sin_theta;
        const double cos_theta = std::sqrt(std::max(0.0, 1.0 - sin_theta * sin_theta));
        if (cos_theta < 1e-12)
            continue; // theta = pi/2: no complementary state
        const CVector perp = (v.apply(p.U_dagger, Phi) - sin_theta * Psi) / cos_theta;
        orth_worst = std::max(orth_worst, std::abs(other.dot(perp)));
        orth_worst = std::max(orth_worst, std::abs(Psi.dot(perp)));
        refl_worst = std::max(refl_worst, (v.apply(p.reflect_psi, Psi) - Psi).cwiseAbs().maxCoeff());
        refl_worst = std::max(refl_worst, (v.apply(p.reflect_psi, perp) + perp).cwiseAbs().maxCoeff());
    }
    details["amplitude_error"] = amp_worst;
    details["orthogonality"] = orth_worst;
    details["reflection"] = refl_worst;
    worst = std::max({amp_worst, orth_worst, refl_worst});
    return worst;
}

/// Runs deterministic_merge on every basis input of the first merge and compares
/// the physical action with @p target.
double merge_action_error(const CompileResult &res, const CMatrix &target, json &details) {
    const MergeView v(res, 0);
    std::vector<CVector> outs;
    double success = 1.0;
    for (std::size_t J = 0; J < v.phys(); ++J) {
        const CVector in = v.apply(v.plan->child, v.basis_input(J));
        const MergeOutcome o = deterministic_merge(*v.plan, *v.regs, in);
        success = std::min(success, o.success_amplitude);
        outs.push_back(o.state);
    }
    const CMatrix action = v.physical_block(outs);
    const double metric = phase_invariant_distance(target, action);
    double leak = 0.0;
    for (const CVector &o : outs)
        leak = std::max(leak, v.leakage(o));
    details["metric"] = metric;
    details["success"] = success;
    details["leakage"] = leak;
    return std::max({metric, 1.0 - success, leak});
}

/// Checks cost(merge) <= ceil(q) * (2 T_child + (n + m) + 2 T(U) + 3) for every merge.
double depth_recursion_excess(const CompileResult &res, json &details) {
    double excess = 0.0;
    details["constants"] = "c = 1 per site, c' = 2 T(U) + 3";
    for (const MergeRecord &r : res.merges) {
        const double lhs = static_cast<double>(depth(r.node).cost_depth);
        const double tc = static_cast<double>(depth(r.plan->child).cost_depth);
        const double tu = r.plan->U ? static_cast<double>(depth(r.plan->U).cost_depth) : 0.0;
        const double sites = static_cast<double>(r.last - r.first + 1);
        const double rhs = std::ceil(r.C - 1e-12) * (2.0 * tc + sites + 2.0 * tu + 3.0);
        excess = std::max(excess, lhs - rhs);
    }
    return excess;
}

double uniform_isometry_residual(const UniformMpu &mpu, int m, int max_n, std::size_t cap) {
    const CapPair caps = compute_caps_uniform(mpu, m);
    const CMatrix l = boundary_cap(mpu.l), r = boundary_cap(mpu.r);
    double worst = 0.0;
    for (int n = 1; n <= max_n; ++n) {
        const MpoChain c = mpu.chain(static_cast<std::size_t>(n));
        const std::size_t last = static_cast<std::size_t>(n) - 1;
        worst = std::max(worst, isometry_residual(build_isometry(c, 0, last, caps.L, caps.R, cap).dense_v));
        worst = std::max(worst, isometry_residual(build_isometry(c, 0, last, l, caps.R, cap).dense_v));
        worst = std::max(worst, isometry_residual(build_isometry(c, 0, last, caps.L, r, cap).dense_v));
    }
    return worst;
}

CMatrix random_density(Eigen::Index n, std::mt19937_64 &rng) {
    const CMatrix g = random_matrix(n, n, rng);
    CMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

double cap_rank_excess(const UniformMpu &mpu, int m, int draws, std::mt19937_64 &rng) {
    const auto dim = static_cast<Eigen::Index>(std::pow(mpu.bulk.d_in, m));
    const std::size_t mixed = numerical_rank(left_cap_square(mpu.bulk, mpu.l, m), 1e-10);
    double excess = 0.0;
    for (int k = 0; k < draws; ++k) {
        const std::size_t rnk = numerical_rank(left_cap_square(mpu.bulk, mpu.l, m, random_density(dim, rng)), 1e-10);
        excess = std::max(excess, static_cast<double>(rnk) - static_cast<double>(mixed));
    }
    return excess;
}

CMatrix multicontrol_z_target(std::size_t N) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << N);
    CMatrix t = CMatrix::Identity(dim, dim);
    t(0, 0) = -1.0;
    return t;
}

double compiled_metric(const CompileResult &res, const CMatrix &target, json &details) {
    const SimulationReport s = simulate(res.circuit, target);
    details["metric"] = s.metric;
    details["leakage"] = s.leakage;
    return std::max(s.metric, s.leakage);
}

// ---- suites ---------------------------------------------------------------

void isometry_cut(Suite &s) {
    s.add("product chain N=3, every block", true, 1e-9, [](std::mt19937_64 &rng, json &) {
        return all_blocks_residual(mpu_product({random_unitary(2, rng), random_unitary(3, rng), random_unitary(2, rng)}));
    });
    s.add("multicontrol-z N=4, every block across cuts 1..3", false, 1e-9, [](std::mt19937_64 &, json &) {
        return all_blocks_residual(mpu_multicontrol_z().chain(4));
    });
    s.add("perturbed multicontrol-z N=4, every block", false, 1e-9, [](std::mt19937_64 &rng, json &) {
        return all_blocks_residual(mpu_conjugated_site(4, 1, random_unitary(2, rng)));
    });
    s.add("random two-site chain N=4 (shifted pairing), every block", false, 1e-9,
          [](std::mt19937_64 &rng, json &) { return all_blocks_residual(random_mpu_chain(4, 2, rng, 1)); });
    s.add("q_k gauge invariance, multicontrol-z N=4", false, 1e-10, [](std::mt19937_64 &rng, json &) {
        return gauge_q_difference(mpu_multicontrol_z().chain(4), rng);
    });
    s.add("q_k gauge invariance, random chain N=4", false, 1e-10, [](std::mt19937_64 &rng, json &) {
        return gauge_q_difference(random_mpu_chain(4, 2, rng, 0), rng);
    });
}

void lcu_optimal(Suite &s) {
    s.add("|0><0| on a qubit", true, 1e-10, [](std::mt19937_64 &, json &) {
        CMatrix m = CMatrix::Zero(2, 2);
        m(0, 0) = 1.0;
        return lcu_error(m);
    });
    s.add("100 random matrices, dim <= 16, random rank", false, 1e-10, [](std::mt19937_64 &rng, json &d) {
        double worst = 0.0;
        std::uniform_int_distribution<int> dim(1, 16);
        for (int k = 0; k < 100; ++k) {
            const int n = dim(rng);
            std::uniform_int_distribution<int> rk(1, n);
            const int r = rk(rng);
            const CMatrix m = random_matrix(n, r, rng) * random_matrix(r, n, rng);
            const double e = lcu_error(m);
            if (e > worst) {
                worst = e;
                d["worst_dim"] = n;
                d["worst_rank"] = r;
            }
        }
        return worst;
    });
    s.add("merge operators of multicontrol-z and Lee-Yang caps", false, 1e-10, [](std::mt19937_64 &, json &) {
        const double a = lcu_error(merge_operator(compute_caps_uniform(mpu_multicontrol_z(), 1)));
        const double b = lcu_error(merge_operator(compute_caps_uniform(lee_yang_mpu(1.0, -0.5).open(), 2)));
        return std::max(a, b);
    });
    s.add("canonical merge operators of a perturbed multicontrol-z N=4", false, 1e-10,
          [](std::mt19937_64 &rng, json &) {
              const CompileResult res = compile_nonuniform(mpu_conjugated_site(4, 2, random_unitary(2, rng)));
              double worst = 0.0;
              for (const MergeRecord &r : res.merges)
                  worst = std::max({worst, r.lcu_residual, r.lcu_weight_error});
              return worst;
          });
}

void subspace_reflection(Suite &s) {
    s.add("R_Phi and R_Psi are involutions, multicontrol-z N=2", true, 1e-10, [](std::mt19937_64 &rng, json &) {
        const CompileResult res = compile_uniform(mpu_multicontrol_z(), 2);
        const MergeView v(res, 0);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            const CVector x = random_matrix(static_cast<Eigen::Index>(v.total), 1, rng).col(0);
            worst = std::max(worst, (v.apply(v.plan->reflect_phi, v.apply(v.plan->reflect_phi, x)) - x).cwiseAbs().maxCoeff());
            worst = std::max(worst, (v.apply(v.plan->reflect_psi, v.apply(v.plan->reflect_psi, x)) - x).cwiseAbs().maxCoeff());
        }
        return worst;
    });
    s.add("orthogonality, reflections and amplitude, multicontrol-z N=2", false, 1e-10,
          [](std::mt19937_64 &rng, json &d) {
              return reflection_checks(compile_uniform(mpu_multicontrol_z(), 2), rng, 5, d);
          });
    s.add("orthogonality, reflections and amplitude, random two-site unitary", false, 1e-10,
          [](std::mt19937_64 &rng, json &d) {
              return reflection_checks(compile_nonuniform(mpu_from_two_site_unitary(random_unitary(4, rng), 2)), rng, 5, d);
          });
    s.add("orthogonality, reflections and amplitude, Lee-Yang N=2", false, 1e-10,
          [](std::mt19937_64 &rng, json &d) {
              CompileOptions o;
              o.blocking = 0;
              return reflection_checks(compile_uniform(lee_yang_mpu(0.7, 2.1).open(), 2, o), rng, 2, d);
          });
}

void deterministic_merge_suite(Suite &s) {
    s.add("identity N=2 (scalar merge)", true, 1e-10, [](std::mt19937_64 &, json &d) {
        return merge_action_error(compile_uniform(mpu_identity(2), 2), CMatrix::Identity(4, 4), d);
    });
    s.add("multicontrol-z N=2 on all basis states", false, 1e-10, [](std::mt19937_64 &, json &d) {
        return merge_action_error(compile_uniform(mpu_multicontrol_z(), 2), multicontrol_z_target(2), d);
    });
    s.add("random two-site unitary on all basis states", false, 1e-10, [](std::mt19937_64 &rng, json &d) {
        const CMatrix u = random_unitary(4, rng);
        return merge_action_error(compile_nonuniform(mpu_from_two_site_unitary(u, 2)), u, d);
    });
    s.add("padding identity over 1000 random C in [1, 50]", false, 1e-12, [](std::mt19937_64 &rng, json &d) {
        std::uniform_real_distribution<double> C(1.0, 50.0);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double c = C(rng);
            const PaddingPlan p = plan_padding(c);
            const double e1 = std::abs(std::sin((2 * p.rotations + 1) * std::asin(1.0 / p.padded_C)) - 1.0);
            const double e2 = std::abs(p.product_weight() - p.padded_C);
            if (std::max(e1, e2) > worst) {
                worst = std::max(e1, e2);
                d["worst_C"] = c;
            }
        }
        return worst;
    });
    s.add("input outside the merge subspace is rejected", false, 0.0, [](std::mt19937_64 &rng, json &) {
        const CompileResult res = compile_uniform(mpu_multicontrol_z(), 2);
        const MergeView v(res, 0);
        const CVector x = random_matrix(static_cast<Eigen::Index>(v.total), 1, rng).col(0).normalized();
        try {
            (void)deterministic_merge(*v.plan, *v.regs, x);
        } catch (const PreconditionError &) {
            return 0.0;
        }
        return 1.0;
    });
}

void merge_depth(Suite &s) {
    s.add("identity N=8 (no rotations)", true, 0.0, [](std::mt19937_64 &, json &d) {
        return depth_recursion_excess(compile_uniform(mpu_identity(2), 8), d);
    });
    s.add("multicontrol-z N=8", false, 0.0, [](std::mt19937_64 &, json &d) {
        return depth_recursion_excess(compile_uniform(mpu_multicontrol_z(), 8), d);
    });
    s.add("Lee-Yang N=8", false, 0.0, [](std::mt19937_64 &, json &d) {
        CompileOptions o;
        o.blocking = 0;
        return depth_recursion_excess(compile_uniform(lee_yang_mpu(std::numbers::pi / 2, 0.0).open(), 8, o), d);
    });
    s.add("perturbed multicontrol-z N=4 (site-dependent)", false, 0.0, [](std::mt19937_64 &rng, json &d) {
        return depth_recursion_excess(compile_nonuniform(mpu_conjugated_site(4, 1, random_unitary(2, rng))), d);
    });
}

void isometry_all_n(Suite &s) {
    s.add("identity, n = 1..3", true, 1e-9, [](std::mt19937_64 &, json &) {
        return uniform_isometry_residual(mpu_identity(3), 1, 3, 0);
    });
    s.add("multicontrol-z, n = 1..3, all cap variants", false, 1e-9, [](std::mt19937_64 &, json &) {
        return uniform_isometry_residual(mpu_multicontrol_z(), 1, 3, 0);
    });
    s.add("Lee-Yang (blocking 2), n = 1..3, all cap variants", false, 1e-9, [](std::mt19937_64 &, json &) {
        return uniform_isometry_residual(lee_yang_mpu(std::numbers::pi / 2, 0.0).open(), 2, 3, std::size_t{1} << 15);
    });
    s.add("maximally mixed weights maximize cap rank (20 draws each)", false, 0.0, [](std::mt19937_64 &rng, json &) {
        return std::max(cap_rank_excess(mpu_multicontrol_z(), 1, 20, rng),
                        cap_rank_excess(lee_yang_mpu(0.4, 1.3).open(), 1, 20, rng));
    });
}

void uniform_exact(Suite &s) {
    s.add("identity N=3", true, 1e-9, [](std::mt19937_64 &, json &d) {
        return compiled_metric(compile_uniform(mpu_identity(2), 3), CMatrix::Identity(8, 8), d);
    });
    s.add("multicontrol-z N=2", false, 1e-9, [](std::mt19937_64 &, json &d) {
        return compiled_metric(compile_uniform(mpu_multicontrol_z(), 2), multicontrol_z_target(2), d);
    });
    s.add("multicontrol-z N=3", false, 1e-9, [](std::mt19937_64 &, json &d) {
        return compiled_metric(compile_uniform(mpu_multicontrol_z(), 3), multicontrol_z_target(3), d);
    });
}

void nonuniform_exact(Suite &s) {
    s.add("product chain N=3", true, 1e-9, [](std::mt19937_64 &rng, json &d) {
        const std::vector<CMatrix> u{random_unitary(2, rng), random_unitary(2, rng), random_unitary(2, rng)};
        return compiled_metric(compile_nonuniform(mpu_product(u)), kron(kron(u[0], u[1]), u[2]), d);
    });
    s.add("perturbed multicontrol-z N=3", false, 1e-9, [](std::mt19937_64 &rng, json &d) {
        const MpoChain c = mpu_conjugated_site(3, 1, random_unitary(2, rng));
        return compiled_metric(compile_nonuniform(c), contract(c), d);
    });
    s.add("random two-site unitary N=2", false, 1e-8, [](std::mt19937_64 &rng, json &d) {
        const CMatrix u = random_unitary(4, rng);
        return compiled_metric(compile_nonuniform(mpu_from_two_site_unitary(u, 2)), u, d);
    });
    s.add("random chain N=4", false, 1e-8, [](std::mt19937_64 &rng, json &d) {
        const MpoChain c = random_mpu_chain(4, 2, rng, 1);
        return compiled_metric(compile_nonuniform(c), contract(c), d);
    });
}

} // namespace

SuiteReport run_lemma_suite(const std::string &tag, std::uint64_t seed) {
    static const std::map<std::string, void (*)(Suite &)> suites{
        {"isometry-cut", isometry_cut},
        {"lcu-optimal", lcu_optimal},
        {"subspace-reflection", subspace_reflection},
        {"deterministic-merge", deterministic_merge_suite},
        {"merge-depth", merge_depth},
        {"isometry-all-n", isometry_all_n},
        {"uniform-exact", uniform_exact},
        {"nonuniform-exact", nonuniform_exact},
    };
    const auto it = suites.find(tag);
    if (it == suites.end())
        throw ValidationError("unknown property suite '" + tag + "'");
    Suite s(tag, seed);
    it->second(s);
    return s.take();
}

} // namespace mpuforge
