// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/compiler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <cmath>
#include <map>
#include <memory>

namespace mpuforge {

namespace {

/// Everything needed to merge across one cut.
struct CutSpec {
    int D = 1;
    std::shared_ptr<const LcuDecomposition> lcu;
    PaddingPlan pad;
    double lcu_residual = 0.0;
    double lcu_weight_error = 0.0;
};

CutSpec make_cut(const CapPair &caps, double tol) {
    CutSpec cut;
    cut.D = static_cast<int>(caps.R.rows());
    const CMatrix M = merge_operator(caps, tol);
    auto lcu = std::make_shared<LcuDecomposition>(lcu_decompose(M, tol));
    cut.lcu_residual = max_abs(lcu->reconstruct() - M);
    cut.lcu_weight_error = std::abs(lcu->C - trace_norm(M));
    cut.pad = plan_padding(lcu->C);
    cut.lcu = std::move(lcu);
    return cut;
}

/// Unitary on (physical, left leg, right leg) whose columns j * legs equal the isometry's columns.
std::shared_ptr<const CMatrix> dilate(const CMatrix &v, Eigen::Index legs) {
    const CMatrix w = complete_to_unitary(v);
    const Eigen::Index n = w.rows();
    auto u = std::make_shared<CMatrix>(n, n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        u->col(j * legs) = w.col(j);
        used[static_cast<std::size_t>(j * legs)] = true;
    }
    Eigen::Index next = v.cols();
    for (Eigen::Index c = 0; c < n; ++c)
        if (!used[static_cast<std::size_t>(c)])
            u->col(c) = w.col(next++);
    return u;
}

std::shared_ptr<const CMatrix> leaf_dilation(const MpoChain &chain, std::size_t site,
                                             const CMatrix &left, const CMatrix &right) {
    const IsometryBlock blk = build_isometry(chain, site, site, left, right);
    const double res = isometry_residual(blk.dense_v);
    if (res > 1e-9)
        throw NumericalError("leaf isometry at site " + std::to_string(site) +
                             " is not isometric (residual " + std::to_string(res) + ")");
    return dilate(blk.dense_v, static_cast<Eigen::Index>(blk.left_leg) * blk.right_leg);
}

struct Block {
    std::size_t first = 0, last = 0;
    NodePtr node;
    int left_leg = -1, right_leg = -1;
};

/// Builds registers, leaves and the merge tree.
void assemble(CompileResult &res, const std::vector<int> &phys_dims,
              const std::vector<std::shared_ptr<const CMatrix>> &leaves, const std::vector<CutSpec> &cuts) {
    const std::size_t N = phys_dims.size();
    RegisterTable &regs = res.circuit.registers;
    std::vector<int> phys(N);
    for (std::size_t i = 0; i < N; ++i)
        phys[i] = regs.add(RegisterKind::Physical, phys_dims[i], "site" + std::to_string(i));
    std::vector<int> left_leg(N, -1), right_leg(N, -1);
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (cuts[k].D < 2)
            continue;
        right_leg[k] = regs.add(RegisterKind::Bond, cuts[k].D, "bond" + std::to_string(k) + ":R");
        left_leg[k + 1] = regs.add(RegisterKind::Bond, cuts[k].D, "bond" + std::to_string(k) + ":L");
    }

    std::vector<Block> blocks;
    std::vector<NodePtr> leaf_nodes;
    for (std::size_t i = 0; i < N; ++i) {
        std::vector<int> targets{phys[i]};
        if (left_leg[i] >= 0)
            targets.push_back(left_leg[i]);
        if (right_leg[i] >= 0)
            targets.push_back(right_leg[i]);
        Block b;
        b.first = b.last = i;
        b.node = make_dense(regs, targets, leaves[i], "leaf" + std::to_string(i));
        b.left_leg = left_leg[i];
        b.right_leg = right_leg[i];
        leaf_nodes.push_back(b.node);
        blocks.push_back(std::move(b));
    }
    res.depth.per_level.push_back(depth(make_parallel(leaf_nodes)).cost_depth);

    int level = 0;
    while (blocks.size() > 1) {
        ++level;
        std::vector<Block> next;
        std::vector<NodePtr> level_nodes;
        for (std::size_t p = 0; p + 1 < blocks.size(); p += 2) {
            const Block &X = blocks[p];
            const Block &Y = blocks[p + 1];
            const CutSpec &cut = cuts[X.last];
            NodePtr child = make_parallel({X.node, Y.node});
            std::vector<int> child_anc;
            for (int id : child->support)
                if (regs.at(id).kind != RegisterKind::Physical)
                    child_anc.push_back(id);
            std::vector<int> system;
            if (cut.D >= 2)
                system = {X.right_leg, Y.left_leg};
            const std::string label = "merge" + std::to_string(X.first) + "-" + std::to_string(Y.last);
            MergePlan plan = build_merge_plan(regs, *cut.lcu, cut.pad, child, child_anc, system,
                                              Y.last - X.first + 1, label);
            MergeRecord rec;
            rec.level = level;
            rec.first = X.first;
            rec.cut = X.last;
            rec.last = Y.last;
            rec.bond_dim = cut.D;
            rec.C = cut.lcu->C;
            rec.padded_C = cut.pad.padded_C;
            rec.rotations = cut.pad.rotations;
            rec.pads = plan.pad_regs.size();
            rec.terms = plan.lcu.size();
            rec.predicted_success = cut.pad.success_amplitude();
            rec.lcu_residual = cut.lcu_residual;
            rec.lcu_weight_error = cut.lcu_weight_error;
            rec.ancilla = plan.ancilla;
            rec.pad_regs = plan.pad_regs;
            rec.legs = system;
            rec.node = plan.merge;
            rec.plan = std::make_shared<const MergePlan>(plan);
            res.merges.push_back(std::move(rec));

            Block m;
            m.first = X.first;
            m.last = Y.last;
            m.node = plan.merge;
            m.left_leg = X.left_leg;
            m.right_leg = Y.right_leg;
            level_nodes.push_back(m.node);
            next.push_back(std::move(m));
        }
        if (blocks.size() % 2 == 1) {
            level_nodes.push_back(blocks.back().node);
            next.push_back(blocks.back()); // odd block promoted unchanged
        }
        res.depth.per_level.push_back(depth(make_parallel(level_nodes)).cost_depth);
        blocks = std::move(next);
    }
    res.circuit.root = blocks.front().node;
    validate(res.circuit.root, regs);
    res.ancilla_manifest = regs.ancillas();
    const DepthReport d = depth(res.circuit.root);
    res.depth.depth = d.depth;
    res.depth.cost_depth = d.cost_depth;
    res.depth.q_used = res.q.q;
}

double small_unitarity_check(const MpoChain &chain, const CompileOptions &opts) {
    const UnitarityReport rep = is_unitary(chain, opts.unitarity_tol, opts.dim_cap);
    if (!rep.unitary)
        throw ValidationError("input is not unitary (residual " + std::to_string(rep.residual) + ")");
    return rep.residual;
}

} // namespace

UniformMpu open_form(const UniformMpu &mpu) {
    if (mpu.is_open())
        return mpu;
    if (!mpu.has_boundary_operator())
        throw ValidationError("uniform MPU has neither boundary vectors nor a boundary operator");
    UniformMpu open = restrict_to_reachable(boundary_to_open(mpu));
    open.name = mpu.name;
    return open;
}

int select_blocking(const UniformMpu &mpu, double tol, int max_m) {
    Assumption1Report last;
    for (int m = 1; m <= max_m; ++m) {
        last = assumption1_report(mpu, tol, m);
        if (last.ok)
            return m;
    }
    throw UnsupportedError("bond-rank condition fails for every blocking m <= " + std::to_string(max_m) +
                           ": bond dimension " + std::to_string(last.bond_dim) + ", left rank " +
                           std::to_string(last.rank_left) + ", right rank " +
                           std::to_string(last.rank_right));
}

CompileResult compile_uniform(const UniformMpu &mpu_in, std::size_t N, const CompileOptions &opts) {
    if (N < 2)
        throw PreconditionError("compile_uniform: N must be at least 2");
    const UniformMpu mpu = open_form(mpu_in);
    mpu.bulk.validate();
    const MpoTensor &A = mpu.bulk;
    if (A.d_in != A.d_out || A.D_left != A.D_right)
        throw ShapeError("compile_uniform: bulk tensor must be square in both physical and bond legs");

    CompileResult res;
    res.mode = CompileMode::Uniform;
    res.N = N;
    res.d = A.d_in;
    if (opts.check_unitarity) {
        const std::size_t cap = opts.dim_cap == 0 ? default_dim_cap() : opts.dim_cap;
        std::size_t n = std::min<std::size_t>(N, 3);
        while (n > 1 && std::pow(static_cast<double>(A.d_in), static_cast<double>(n)) > static_cast<double>(cap))
            --n;
        res.unitarity_residual = small_unitarity_check(mpu.chain(n), opts);
    }

    const int m = opts.blocking == 0 ? select_blocking(mpu, opts.tol) : opts.blocking;
    const Assumption1Report a1 = assumption1_report(mpu, opts.tol, m);
    if (!a1.ok)
        throw UnsupportedError("bond-rank condition fails at blocking m = " + std::to_string(m) + ": bond dimension " +
                               std::to_string(a1.bond_dim) + ", left rank " + std::to_string(a1.rank_left) +
                               ", right rank " + std::to_string(a1.rank_right));
    res.blocking = m;
    res.caps = compute_caps_uniform(mpu, m, opts.sigma, opts.tau, opts.tol);
    if (!res.caps.full_rank)
        throw UnsupportedError("isometry caps are rank deficient (" + res.caps.source + ")");
    res.q.q = conditioning_uniform(res.caps, opts.tol);

    const MpoChain chain = mpu.chain(N);
    const CMatrix lcap = boundary_cap(mpu.l);
    const CMatrix rcap = boundary_cap(mpu.r);
    std::vector<std::shared_ptr<const CMatrix>> leaves(N);
    leaves.front() = leaf_dilation(chain, 0, lcap, res.caps.R);
    leaves.back() = leaf_dilation(chain, N - 1, res.caps.L, rcap);
    if (N > 2) {
        const auto bulk = leaf_dilation(chain, 1, res.caps.L, res.caps.R);
        for (std::size_t i = 1; i + 1 < N; ++i)
            leaves[i] = bulk;
    }
    const CutSpec cut = make_cut(res.caps, opts.tol);
    const std::vector<CutSpec> cuts(N - 1, cut);
    assemble(res, std::vector<int>(N, A.d_in), leaves, cuts);
    return res;
}

CompileResult compile_nonuniform(const MpoChain &chain, const CompileOptions &opts) {
    chain.validate();
    const std::size_t N = chain.size();
    if (N < 2)
        throw PreconditionError("compile_nonuniform: chain needs at least 2 sites");
    std::vector<int> dims;
    for (const MpoTensor &t : chain.tensors) {
        if (t.d_in != t.d_out)
            throw ShapeError("compile_nonuniform: sites must have equal input and output dimension");
        dims.push_back(t.d_in);
    }
    CompileResult res;
    res.mode = CompileMode::Nonuniform;
    res.N = N;
    res.d = dims.front();
    const std::size_t cap = opts.dim_cap == 0 ? default_dim_cap() : opts.dim_cap;
    if (opts.check_unitarity && chain.input_dim() <= cap)
        res.unitarity_residual = small_unitarity_check(chain, opts);

    const SchmidtData data = choi_canonicalize(chain, opts.tol);
    const MpoChain &canon = data.canonical;
    const SchmidtBound sb = schmidt_bound_q(data);
    res.q.q = sb.q;
    res.q.q_k = sb.q_k;
    res.q.bound = sb.bound;
    res.q.s_min = data.s_min;

    std::vector<CutSpec> cuts;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const RVector &s = data.schmidt[k];
        CapPair caps;
        caps.L = CMatrix::Identity(s.size(), s.size());
        caps.R = s.cast<cplx>().asDiagonal();
        caps.full_rank = true;
        caps.source = "canonical (L = 1, R = diag(s)) at cut " + std::to_string(k + 1);
        res.cut_caps.push_back(caps);
        cuts.push_back(make_cut(caps, opts.tol));
    }
    std::vector<std::shared_ptr<const CMatrix>> leaves(N);
    for (std::size_t i = 0; i < N; ++i) {
        const CMatrix left = i == 0 ? boundary_cap(canon.l) : res.cut_caps[i - 1].L;
        const CMatrix right = i + 1 == N ? boundary_cap(canon.r) : res.cut_caps[i].R;
        leaves[i] = leaf_dilation(canon, i, left, right);
    }
    assemble(res, dims, leaves, cuts);
    return res;
}

namespace {

struct Layout {
    std::vector<int> order;
    std::size_t phys_dim = 1;
    std::size_t anc_dim = 1;
};

Layout layout_for(const RegisterTable &regs, const std::vector<int> &support) {
    Layout l;
    l.order = order_for(regs, support);
    for (int id : l.order) {
        const auto dim = static_cast<std::size_t>(regs.at(id).dim);
        if (regs.at(id).kind == RegisterKind::Physical)
            l.phys_dim *= dim;
        else
            l.anc_dim *= dim;
    }
    return l;
}

/// Applies @p node to physical basis inputs [start, start + count) with ancillas |0>.
StateBatch run_inputs(const NodePtr &node, const RegisterTable &regs, const Layout &l,
                      std::size_t start, std::size_t count) {
    const std::size_t total = l.phys_dim * l.anc_dim;
    StateBatch s = StateBatch::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(count));
    for (std::size_t c = 0; c < count; ++c)
        s(static_cast<Eigen::Index>((start + c) * l.anc_dim), static_cast<Eigen::Index>(c)) = 1.0;
    apply_state(node, s, regs, l.order);
    return s;
}

std::size_t chunk_columns(std::size_t total) {
    return std::max<std::size_t>(1, (std::size_t{1} << 23) / std::max<std::size_t>(1, total));
}

} // namespace

SimulationReport simulate(const Circuit &circuit, const CMatrix &target) {
    const RegisterTable &regs = circuit.registers;
    const Layout l = layout_for(regs, regs.canonical_order());
    const std::size_t total = l.phys_dim * l.anc_dim;
    if (total > kStateCap)
        throw ResourceError("simulate: state dimension " + std::to_string(total) + " exceeds the cap");
    if (target.size() > 0 && (static_cast<std::size_t>(target.rows()) != l.phys_dim || target.cols() != target.rows()))
        throw ShapeError("simulate: target dimension does not match the physical registers");
    SimulationReport rep;
    rep.action = CMatrix::Zero(static_cast<Eigen::Index>(l.phys_dim), static_cast<Eigen::Index>(l.phys_dim));
    const std::size_t chunk = chunk_columns(total);
    for (std::size_t start = 0; start < l.phys_dim; start += chunk) {
        const std::size_t count = std::min(chunk, l.phys_dim - start);
        const StateBatch s = run_inputs(circuit.root, regs, l, start, count);
        for (std::size_t c = 0; c < count; ++c) {
            double outside = 0.0;
            for (std::size_t row = 0; row < total; ++row) {
                const cplx v = s(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c));
                if (row % l.anc_dim == 0)
                    rep.action(static_cast<Eigen::Index>(row / l.anc_dim), static_cast<Eigen::Index>(start + c)) = v;
                else
                    outside += std::norm(v);
            }
            rep.leakage = std::max(rep.leakage, std::sqrt(outside));
        }
    }
    if (target.size() > 0) {
        rep.metric = phase_invariant_distance(target, rep.action);
        rep.max_error = phase_aligned_error(target, rep.action);
    }
    return rep;
}

void measure_merge_success(CompileResult &result, std::size_t max_inputs) {
    const RegisterTable &regs = result.circuit.registers;
    for (MergeRecord &rec : result.merges) {
        const Layout l = layout_for(regs, rec.node->support);
        const std::size_t total = l.phys_dim * l.anc_dim;
        if (total > kStateCap)
            throw ResourceError("measure_merge_success: merge support too large to simulate");
        std::vector<int> watched = rec.legs;
        watched.insert(watched.end(), rec.pad_regs.begin(), rec.pad_regs.end());
        if (rec.ancilla >= 0)
            watched.push_back(rec.ancilla);
        const std::size_t inputs = std::min(max_inputs, l.phys_dim);
        const std::size_t chunk = chunk_columns(total);
        double worst = 1.0; // value farthest from 1 over the inputs
        for (std::size_t start = 0; start < inputs; start += chunk) {
            const std::size_t count = std::min(chunk, inputs - start);
            const StateBatch s = run_inputs(rec.node, regs, l, start, count);
            for (std::size_t c = 0; c < count; ++c) {
                StateBatch col = s.col(static_cast<Eigen::Index>(c));
                const double outside = weight_outside_zero(col, regs, l.order, watched);
                const double success = std::sqrt(std::max(0.0, col.squaredNorm() - outside));
                if (std::abs(success - 1.0) > std::abs(worst - 1.0))
                    worst = success;
            }
        }
        rec.measured_success = worst;
    }
}

ScalingReport depth_scaling_report(const UniformMpu &mpu, const std::vector<std::size_t> &N_list,
                                   const CompileOptions &opts, double limit, int jobs) {
    ScalingReport rep;
    rep.limit = limit;
    if (N_list.empty())
        return rep;
    // Validate once up front; the per-N compiles then only count depth.
    const CompileResult probe = compile_uniform(mpu, 2, opts);
    rep.q = probe.q.q;
    rep.exponent = 1.0 + std::log2(rep.q);
    CompileOptions o = opts;
    o.check_unitarity = false;
    o.blocking = probe.blocking;

    rep.rows.resize(N_list.size());
    std::vector<std::exception_ptr> errors(N_list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < N_list.size(); i = next++) {
            try {
                const CompileResult res = compile_uniform(mpu, N_list[i], o);
                ScalingRow &row = rep.rows[i];
                row.N = N_list[i];
                row.depth = res.depth.depth;
                row.cost_depth = res.depth.cost_depth;
                row.predicted = std::pow(static_cast<double>(row.N), rep.exponent);
                row.ratio = static_cast<double>(row.cost_depth) / row.predicted;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n_threads = std::clamp(jobs, 1, static_cast<int>(N_list.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (std::thread &t : pool)
        t.join();
    for (const std::exception_ptr &e : errors)
        if (e)
            std::rethrow_exception(e);

    double lo = rep.rows.front().ratio, hi = lo;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const ScalingRow &row : rep.rows) {
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
        const double x = std::log(static_cast<double>(row.N));
        const double y = std::log(static_cast<double>(row.cost_depth));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const auto n = static_cast<double>(rep.rows.size());
    if (rep.rows.size() >= 2)
        rep.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.max_over_min = lo > 0.0 ? hi / lo : 0.0;
    rep.bounded = rep.max_over_min <= limit;
    return rep;
}

} // namespace mpuforge
