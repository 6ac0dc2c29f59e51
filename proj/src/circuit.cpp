// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
#include "mpuforge/circuit.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

namespace mpuforge {

// ----------------------------------------------------------------------------- registers

const char *to_string(RegisterKind k) {
    switch (k) {
    case RegisterKind::Physical:
        return "physical";
    case RegisterKind::Bond:
        return "bond";
    case RegisterKind::LcuAncilla:
        return "lcu_ancilla";
    case RegisterKind::Pad:
        return "pad";
    }
    return "?";
}

RegisterKind register_kind_from_string(const std::string &s) {
    if (s == "physical")
        return RegisterKind::Physical;
    if (s == "bond")
        return RegisterKind::Bond;
    if (s == "lcu_ancilla")
        return RegisterKind::LcuAncilla;
    if (s == "pad")
        return RegisterKind::Pad;
    throw ValidationError("unknown register kind '" + s + "'");
}

int RegisterTable::add(RegisterKind kind, int dim, std::string label) {
    if (dim < 2)
        throw PreconditionError("register dimension must be >= 2 (" + label + ")");
    const int id = static_cast<int>(regs_.size());
    regs_.push_back({id, kind, dim, std::move(label)});
    return id;
}

const Register &RegisterTable::at(int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= regs_.size())
        throw ValidationError("unknown register id " + std::to_string(id));
    return regs_[static_cast<std::size_t>(id)];
}

std::vector<int> RegisterTable::canonical_order() const {
    std::vector<int> ids(regs_.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        return static_cast<int>(regs_[a].kind) < static_cast<int>(regs_[b].kind);
    });
    return ids;
}

std::vector<int> RegisterTable::ancillas() const {
    std::vector<int> out;
    for (int id : canonical_order())
        if (regs_[static_cast<std::size_t>(id)].kind != RegisterKind::Physical)
            out.push_back(id);
    return out;
}

std::vector<int> RegisterTable::physical() const {
    std::vector<int> out;
    for (const Register &r : regs_)
        if (r.kind == RegisterKind::Physical)
            out.push_back(r.id);
    return out;
}

// ----------------------------------------------------------------------------- builders

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> merge_supports(const std::vector<NodePtr> &children) {
    std::vector<int> all;
    for (const NodePtr &c : children)
        all.insert(all.end(), c->support.begin(), c->support.end());
    return sorted_unique(std::move(all));
}

std::size_t target_dim(const RegisterTable &regs, const std::vector<int> &targets) {
    std::size_t dim = 1;
    for (int t : targets)
        dim *= static_cast<std::size_t>(regs.at(t).dim);
    return dim;
}

void check_targets(const std::vector<int> &targets, const char *what) {
    if (targets.empty())
        throw ValidationError(std::string(what) + ": primitive needs at least one register");
    if (sorted_unique(targets).size() != targets.size())
        throw ValidationError(std::string(what) + ": repeated register");
}

NodePtr wrap(Primitive p, std::vector<int> support) {
    auto n = std::make_shared<Node>();
    n->label = p.label;
    n->v = std::move(p);
    n->support = sorted_unique(std::move(support));
    return n;
}

} // namespace

NodePtr make_dense(const RegisterTable &regs, std::vector<int> targets,
                   std::shared_ptr<const CMatrix> u, std::string label) {
    check_targets(targets, "make_dense");
    const auto dim = static_cast<Eigen::Index>(target_dim(regs, targets));
    if (!u || u->rows() != dim || u->cols() != dim)
        throw ValidationError("make_dense: matrix dimension does not match registers (" + label + ")");
    // Shared matrices (e.g. the uniform bulk leaf) are verified once.
    thread_local std::weak_ptr<const CMatrix> last_verified;
    if (last_verified.lock() != u) {
        const double res = unitarity_residual(*u);
        if (res > 1e-12 * std::max<double>(1.0, static_cast<double>(dim) / 64.0))
            throw ValidationError("make_dense: matrix is not unitary (residual " +
                                  std::to_string(res) + ", " + label + ")");
        last_verified = u;
    }
    Primitive p;
    p.kind = Primitive::Kind::Dense;
    p.registers = targets;
    p.matrix = std::move(u);
    p.label = std::move(label);
    return wrap(std::move(p), targets);
}

NodePtr make_dense(const RegisterTable &regs, std::vector<int> targets, const CMatrix &u,
                   std::string label) {
    return make_dense(regs, std::move(targets), std::make_shared<const CMatrix>(u),
                      std::move(label));
}

NodePtr make_diagonal(const RegisterTable &regs, std::vector<int> targets,
                      std::shared_ptr<const CVector> d, std::string label) {
    check_targets(targets, "make_diagonal");
    const auto dim = static_cast<Eigen::Index>(target_dim(regs, targets));
    if (!d || d->size() != dim)
        throw ValidationError("make_diagonal: diagonal length does not match registers");
    if (((d->cwiseAbs().array() - 1.0).abs() > 1e-12).any())
        throw ValidationError("make_diagonal: entries must have unit modulus");
    Primitive p;
    p.kind = Primitive::Kind::Diagonal;
    p.registers = targets;
    p.diagonal = std::move(d);
    p.label = std::move(label);
    return wrap(std::move(p), targets);
}

NodePtr make_reflector(const RegisterTable &regs, std::vector<int> targets,
                       std::shared_ptr<const Reflector> r, std::string label) {
    check_targets(targets, "make_reflector");
    const auto dim = static_cast<Eigen::Index>(target_dim(regs, targets));
    if (!r || r->v.size() != dim)
        throw ValidationError("make_reflector: vector length does not match registers");
    const double nv = r->v.norm();
    if (std::abs(nv - 1.0) > 1e-12 && nv != 0.0)
        throw ValidationError("make_reflector: vector must be normalized");
    if (std::abs(std::abs(r->phase) - 1.0) > 1e-12)
        throw ValidationError("make_reflector: phase must have unit modulus");
    Primitive p;
    p.kind = Primitive::Kind::Reflector;
    p.registers = targets;
    p.reflector = std::move(r);
    p.label = std::move(label);
    return wrap(std::move(p), targets);
}

NodePtr make_conditional_phase(std::vector<int> zero_regs, std::vector<int> nonzero_regs,
                               cplx phase, std::string label) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12)
        throw ValidationError("make_conditional_phase: phase must have unit modulus");
    std::vector<int> all = zero_regs;
    all.insert(all.end(), nonzero_regs.begin(), nonzero_regs.end());
    check_targets(all, "make_conditional_phase");
    Primitive p;
    p.kind = Primitive::Kind::ConditionalPhase;
    p.registers = all;
    p.zero_regs = std::move(zero_regs);
    p.nonzero_regs = std::move(nonzero_regs);
    p.phase = phase;
    p.label = std::move(label);
    return wrap(std::move(p), all);
}

NodePtr make_sequence(std::vector<NodePtr> children, std::string label) {
    auto n = std::make_shared<Node>();
    n->support = merge_supports(children);
    n->v = Sequence{std::move(children)};
    n->label = std::move(label);
    return n;
}

NodePtr make_parallel(std::vector<NodePtr> children, std::string label) {
    std::size_t total = 0;
    for (const NodePtr &c : children)
        total += c->support.size();
    auto n = std::make_shared<Node>();
    n->support = merge_supports(children);
    if (n->support.size() != total)
        throw ValidationError("make_parallel: children act on overlapping registers");
    n->v = Parallel{std::move(children)};
    n->label = std::move(label);
    return n;
}

NodePtr make_repeat(NodePtr body, std::uint64_t times, std::string label) {
    auto n = std::make_shared<Node>();
    n->support = body->support;
    n->v = Repeat{std::move(body), times};
    n->label = std::move(label);
    return n;
}

NodePtr make_adjoint(NodePtr child) {
    auto n = std::make_shared<Node>();
    n->support = child->support;
    n->label = child->label.empty() ? std::string("adjoint") : child->label + "^dagger";
    n->v = Adjoint{std::move(child)};
    return n;
}

NodePtr make_overhead(std::uint64_t cost, std::string label) {
    auto n = std::make_shared<Node>();
    n->v = Overhead{cost, label};
    n->label = std::move(label);
    return n;
}

// ----------------------------------------------------------------------------- depth

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                             : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

struct DepthPair {
    std::uint64_t depth = 0, cost = 0;
};

DepthPair depth_rec(const Node *n, std::unordered_map<const Node *, DepthPair> &memo) {
    if (auto it = memo.find(n); it != memo.end())
        return it->second;
    DepthPair out;
    if (std::holds_alternative<Primitive>(n->v)) {
        out = {1, 1};
    } else if (const auto *s = std::get_if<Sequence>(&n->v)) {
        for (const NodePtr &c : s->children) {
            const DepthPair d = depth_rec(c.get(), memo);
            out.depth = sat_add(out.depth, d.depth);
            out.cost = sat_add(out.cost, d.cost);
        }
    } else if (const auto *p = std::get_if<Parallel>(&n->v)) {
        for (const NodePtr &c : p->children) {
            const DepthPair d = depth_rec(c.get(), memo);
            out.depth = std::max(out.depth, d.depth);
            out.cost = std::max(out.cost, d.cost);
        }
    } else if (const auto *r = std::get_if<Repeat>(&n->v)) {
        const DepthPair d = depth_rec(r->body.get(), memo);
        out = {sat_mul(d.depth, r->times), sat_mul(d.cost, r->times)};
    } else if (const auto *a = std::get_if<Adjoint>(&n->v)) {
        out = depth_rec(a->child.get(), memo);
    } else if (const auto *o = std::get_if<Overhead>(&n->v)) {
        out = {0, o->cost};
    }
    memo.emplace(n, out);
    return out;
}

void collect(const Node *n, std::unordered_map<const Node *, bool> &seen) {
    if (!seen.emplace(n, true).second)
        return;
    if (const auto *s = std::get_if<Sequence>(&n->v))
        for (const NodePtr &c : s->children)
            collect(c.get(), seen);
    else if (const auto *p = std::get_if<Parallel>(&n->v))
        for (const NodePtr &c : p->children)
            collect(c.get(), seen);
    else if (const auto *r = std::get_if<Repeat>(&n->v))
        collect(r->body.get(), seen);
    else if (const auto *a = std::get_if<Adjoint>(&n->v))
        collect(a->child.get(), seen);
}

} // namespace

DepthReport depth(const NodePtr &node) {
    if (!node)
        throw ValidationError("depth: null node");
    std::unordered_map<const Node *, DepthPair> memo;
    const DepthPair d = depth_rec(node.get(), memo);
    DepthReport rep;
    rep.depth = d.depth;
    rep.cost_depth = d.cost;
    return rep;
}

std::size_t node_count(const NodePtr &node) {
    std::unordered_map<const Node *, bool> seen;
    collect(node.get(), seen);
    return seen.size();
}

// ----------------------------------------------------------------------------- simulation

namespace {

class Simulator {
  public:
    Simulator(const RegisterTable &regs, const std::vector<int> &order) : regs_(regs) {
        std::size_t stride = 1;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Register &r = regs.at(*it);
            if (slot_.count(r.id))
                throw ValidationError("register order lists a register twice");
            slot_[r.id] = {stride, static_cast<std::size_t>(r.dim)};
            stride *= static_cast<std::size_t>(r.dim);
        }
        total_ = stride;
    }

    [[nodiscard]] std::size_t total() const { return total_; }

    void apply(const Node &n, bool adj, StateBatch &s) {
        if (const auto *p = std::get_if<Primitive>(&n.v)) {
            apply_primitive(*p, adj, s);
        } else if (const auto *q = std::get_if<Sequence>(&n.v)) {
            if (!adj)
                for (const NodePtr &c : q->children)
                    apply(*c, false, s);
            else
                for (auto it = q->children.rbegin(); it != q->children.rend(); ++it)
                    apply(**it, true, s);
        } else if (const auto *p2 = std::get_if<Parallel>(&n.v)) {
            for (const NodePtr &c : p2->children)
                apply(*c, adj, s);
        } else if (const auto *r = std::get_if<Repeat>(&n.v)) {
            for (std::uint64_t t = 0; t < r->times; ++t)
                apply(*r->body, adj, s);
        } else if (const auto *a = std::get_if<Adjoint>(&n.v)) {
            apply(*a->child, !adj, s);
        }
    }

  private:
    struct Slot {
        std::size_t stride, dim;
    };
    struct Offsets {
        std::vector<std::size_t> inner; ///< offsets of target basis states (first target slowest)
        std::vector<std::size_t> outer; ///< bases with all target digits zero
    };

    const Slot &slot(int id) const {
        auto it = slot_.find(id);
        if (it == slot_.end())
            throw ValidationError("circuit touches register " + std::to_string(id) +
                                  " which is not in the simulation order");
        return it->second;
    }

    const Offsets &offsets(const std::vector<int> &targets) {
        auto it = cache_.find(targets);
        if (it != cache_.end())
            return it->second;
        Offsets off;
        off.inner = {0};
        for (int t : targets) {
            const Slot &s = slot(t);
            std::vector<std::size_t> next;
            next.reserve(off.inner.size() * s.dim);
            for (std::size_t base : off.inner)
                for (std::size_t v = 0; v < s.dim; ++v)
                    next.push_back(base + v * s.stride);
            off.inner = std::move(next);
        }
        off.outer = {0};
        for (const auto &[id, s] : slot_) {
            if (std::find(targets.begin(), targets.end(), id) != targets.end())
                continue;
            std::vector<std::size_t> next;
            next.reserve(off.outer.size() * s.dim);
            for (std::size_t base : off.outer)
                for (std::size_t v = 0; v < s.dim; ++v)
                    next.push_back(base + v * s.stride);
            off.outer = std::move(next);
        }
        std::sort(off.outer.begin(), off.outer.end());
        return cache_.emplace(targets, std::move(off)).first->second;
    }

    void apply_primitive(const Primitive &p, bool adj, StateBatch &s) {
        using Kind = Primitive::Kind;
        if (p.kind == Kind::ConditionalPhase) {
            apply_conditional_phase(p, adj, s);
            return;
        }
        const Offsets &off = offsets(p.registers);
        const auto dt = static_cast<Eigen::Index>(off.inner.size());
        const Eigen::Index B = s.cols();
        if (p.kind == Kind::Diagonal) {
            const CVector &d = *p.diagonal;
            for (std::size_t base : off.outer)
                for (Eigen::Index t = 0; t < dt; ++t)
                    s.row(static_cast<Eigen::Index>(base + off.inner[t])) *=
                        adj ? std::conj(d(t)) : d(t);
            return;
        }
        Eigen::MatrixXcd tmp(dt, B), res(dt, B);
        for (std::size_t base : off.outer) {
            bool nonzero = false;
            for (Eigen::Index t = 0; t < dt; ++t) {
                tmp.row(t) = s.row(static_cast<Eigen::Index>(base + off.inner[t]));
                nonzero = nonzero || !tmp.row(t).isZero(0.0);
            }
            if (!nonzero)
                continue;
            if (p.kind == Kind::Dense) {
                if (adj)
                    res.noalias() = p.matrix->adjoint() * tmp;
                else
                    res.noalias() = *p.matrix * tmp;
            } else {
                const Reflector &r = *p.reflector;
                res = tmp - 2.0 * r.v * (r.v.adjoint() * tmp);
                res *= adj ? std::conj(r.phase) : r.phase;
            }
            for (Eigen::Index t = 0; t < dt; ++t)
                s.row(static_cast<Eigen::Index>(base + off.inner[t])) = res.row(t);
        }
    }

    void apply_conditional_phase(const Primitive &p, bool adj, StateBatch &s) {
        std::vector<Slot> zero, nonzero;
        for (int id : p.zero_regs)
            zero.push_back(slot(id));
        for (int id : p.nonzero_regs)
            nonzero.push_back(slot(id));
        const cplx ph = adj ? std::conj(p.phase) : p.phase;
        for (std::size_t idx = 0; idx < total_; ++idx) {
            bool ok = true;
            for (const Slot &z : zero)
                if ((idx / z.stride) % z.dim != 0) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            bool any = nonzero.empty();
            for (const Slot &z : nonzero)
                if ((idx / z.stride) % z.dim != 0) {
                    any = true;
                    break;
                }
            if (any)
                s.row(static_cast<Eigen::Index>(idx)) *= ph;
        }
    }

    const RegisterTable &regs_;
    std::map<int, Slot> slot_;
    std::size_t total_ = 1;
    std::map<std::vector<int>, Offsets> cache_;
};

} // namespace

void apply_state(const NodePtr &node, StateBatch &states, const RegisterTable &regs,
                 const std::vector<int> &order) {
    Simulator sim(regs, order);
    if (sim.total() > kStateCap)
        throw ResourceError("apply_state: state dimension " + std::to_string(sim.total()) +
                            " exceeds cap 2^22");
    if (static_cast<std::size_t>(states.rows()) != sim.total())
        throw ShapeError("apply_state: state dimension does not match the register order");
    for (int id : node->support)
        (void)regs.at(id);
    sim.apply(*node, false, states);
}

CVector apply_state(const NodePtr &node, const CVector &state, const RegisterTable &regs,
                    const std::vector<int> &order) {
    StateBatch s = state;
    apply_state(node, s, regs, order);
    return s.col(0);
}

CMatrix to_unitary(const NodePtr &node, const RegisterTable &regs, const std::vector<int> &order,
                   std::size_t dim_cap) {
    std::size_t dim = 1;
    for (int id : order)
        dim *= static_cast<std::size_t>(regs.at(id).dim);
    const std::size_t cap = dim_cap == 0 ? 4096 : dim_cap;
    if (dim > cap)
        throw ResourceError("to_unitary: dimension " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(cap));
    StateBatch s = StateBatch::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    apply_state(node, s, regs, order);
    return s;
}

void validate(const NodePtr &node, const RegisterTable &regs) {
    if (!node)
        throw ValidationError("validate: null node");
    std::unordered_map<const Node *, bool> seen;
    collect(node.get(), seen);
    for (const auto &[n, unused] : seen) {
        (void)unused;
        for (int id : n->support)
            (void)regs.at(id);
        if (const auto *p = std::get_if<Parallel>(&n->v)) {
            std::size_t total = 0;
            for (const NodePtr &c : p->children)
                total += c->support.size();
            if (total != n->support.size())
                throw ValidationError("validate: Parallel children overlap");
        }
        if (const auto *p = std::get_if<Primitive>(&n->v)) {
            std::size_t dim = 1;
            for (int id : p->registers)
                dim *= static_cast<std::size_t>(regs.at(id).dim);
            const Eigen::Index want = static_cast<Eigen::Index>(dim);
            if ((p->kind == Primitive::Kind::Dense && p->matrix->rows() != want) ||
                (p->kind == Primitive::Kind::Diagonal && p->diagonal->size() != want) ||
                (p->kind == Primitive::Kind::Reflector && p->reflector->v.size() != want))
                throw ValidationError("validate: primitive dimension mismatch");
        }
    }
}

} // namespace mpuforge
