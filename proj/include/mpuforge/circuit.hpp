// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Hierarchical circuit IR on qudit registers of arbitrary dimension.
 *
 * Nodes are immutable and shared (the tree is a DAG: a merged block's circuit
 * is referenced by every amplification round of its parent).  Time order in a
 * Sequence is left to right: the first child acts first.
 *
 * Variants:
 *   Primitive  -- one unitary on an ordered register list; stored densely, as a
 *                 diagonal, as a phased Householder reflector, or as a
 *                 conditional phase (multiply by `phase` iff every register in
 *                 zero_regs is 0 and at least one register in nonzero_regs is not)
 *   Sequence, Parallel (disjoint supports), Repeat(body, times)
 *   Adjoint    -- inverse of a child, applied lazily
 *   Overhead   -- no-op carrying an explicit cost for the linear merge term of
 *                 the cost model (ignored by the oracle-call depth)
 *
 * Register order convention for dense views: physical sites left to right,
 * then bond registers by creation order, then LCU ancillas, then pad qubits.
 * The first register of an order is the slowest index.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mpuforge/linalg.hpp"

namespace mpuforge {

enum class RegisterKind { Physical, Bond, LcuAncilla, Pad };

const char *to_string(RegisterKind k);
RegisterKind register_kind_from_string(const std::string &s);

struct Register {
    int id = 0;
    RegisterKind kind = RegisterKind::Physical;
    int dim = 2;
    std::string label;
};

class RegisterTable {
  public:
    /// Adds a register (dim >= 2) and returns its id.
    int add(RegisterKind kind, int dim, std::string label);
    [[nodiscard]] const Register &at(int id) const;
    [[nodiscard]] const std::vector<Register> &all() const { return regs_; }
    /// Register ids in the canonical dense order (see file comment).
    [[nodiscard]] std::vector<int> canonical_order() const;
    /// Ids of every non-physical register in canonical order.
    [[nodiscard]] std::vector<int> ancillas() const;
    [[nodiscard]] std::vector<int> physical() const;

  private:
    std::vector<Register> regs_;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Primitive {
    enum class Kind { Dense, Diagonal, Reflector, ConditionalPhase };
    Kind kind = Kind::Dense;
    std::vector<int> registers;
    std::shared_ptr<const CMatrix> matrix;   ///< Dense
    std::shared_ptr<const CVector> diagonal; ///< Diagonal
    std::shared_ptr<const Reflector> reflector;
    std::vector<int> zero_regs;    ///< ConditionalPhase
    std::vector<int> nonzero_regs; ///< ConditionalPhase
    cplx phase{-1.0, 0.0};         ///< ConditionalPhase
    std::string label;
};

struct Sequence {
    std::vector<NodePtr> children;
};
struct Parallel {
    std::vector<NodePtr> children;
};
struct Repeat {
    NodePtr body;
    std::uint64_t times = 0;
};
struct Adjoint {
    NodePtr child;
};
struct Overhead {
    std::uint64_t cost = 0;
    std::string label;
};

struct Node {
    std::variant<Primitive, Sequence, Parallel, Repeat, Adjoint, Overhead> v;
    std::vector<int> support; ///< sorted register ids touched
    std::string label;
};

// Builders (validate dimensions against the register table).
NodePtr make_dense(const RegisterTable &regs, std::vector<int> targets,
                   std::shared_ptr<const CMatrix> u, std::string label = {});
NodePtr make_dense(const RegisterTable &regs, std::vector<int> targets, const CMatrix &u,
                   std::string label = {});
NodePtr make_diagonal(const RegisterTable &regs, std::vector<int> targets,
                      std::shared_ptr<const CVector> d, std::string label = {});
NodePtr make_reflector(const RegisterTable &regs, std::vector<int> targets,
                       std::shared_ptr<const Reflector> r, std::string label = {});
NodePtr make_conditional_phase(std::vector<int> zero_regs, std::vector<int> nonzero_regs,
                               cplx phase, std::string label = {});
NodePtr make_sequence(std::vector<NodePtr> children, std::string label = {});
NodePtr make_parallel(std::vector<NodePtr> children, std::string label = {});
NodePtr make_repeat(NodePtr body, std::uint64_t times, std::string label = {});
NodePtr make_adjoint(NodePtr child);
NodePtr make_overhead(std::uint64_t cost, std::string label = {});

struct DepthReport {
    std::uint64_t depth = 0;      ///< oracle-call depth: every primitive counts 1
    std::uint64_t cost_depth = 0; ///< depth plus Overhead costs (linear merge term)
    std::vector<std::uint64_t> per_level; ///< cost depth after each merge level (filled by compiler)
    double q_used = 0.0;
    double fitted_exponent = 0.0;
};

/// Depth per the recurrence: Sequence sums, Parallel takes the max, Repeat
/// multiplies, Adjoint copies, Primitive = 1, Overhead = 0 (cost: its cost).
DepthReport depth(const NodePtr &node);

/// Number of distinct nodes reachable from @p node (DAG size).
std::size_t node_count(const NodePtr &node);

/// Row-major batch of states: rows index the basis in the given register order,
/// columns are independent states.
using StateBatch = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Maximum entries per state for apply_state.
inline constexpr std::size_t kStateCap = std::size_t{1} << 22;

/// Applies the circuit to every column of @p states by local contraction.
void apply_state(const NodePtr &node, StateBatch &states, const RegisterTable &regs,
                 const std::vector<int> &order);
CVector apply_state(const NodePtr &node, const CVector &state, const RegisterTable &regs,
                    const std::vector<int> &order);

/// Dense unitary in the given register order (total dimension <= dim_cap, default 4096).
CMatrix to_unitary(const NodePtr &node, const RegisterTable &regs, const std::vector<int> &order,
                   std::size_t dim_cap = 0);

/// Throws ValidationError when the node is malformed (e.g. overlapping Parallel children).
void validate(const NodePtr &node, const RegisterTable &regs);

struct Circuit {
    RegisterTable registers;
    NodePtr root;
};

} // namespace mpuforge
