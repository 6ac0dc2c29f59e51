// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Tree-merge synthesis.  Every site becomes a leaf isometry (a unitary dilation
 * of the capped single-site tensor on physical (x) bond-leg registers); neighbouring
 * blocks are then merged pairwise over ceil(log2 N) levels with deterministic
 * LCU + amplitude-amplification merge circuits.
 *
 * Register layout: one physical register per site (left to right), then for every
 * internal cut k with bond dimension D_k >= 2 a pair of bond registers (the right
 * leg of site k, the left leg of site k+1), then LCU ancillas and pad qubits in
 * creation order.  Cuts with D_k = 1 need no legs and merge trivially.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mpuforge/amplification.hpp"
#include "mpuforge/circuit.hpp"
#include "mpuforge/isometry.hpp"
#include "mpuforge/lcu.hpp"
#include "mpuforge/mpo.hpp"

namespace mpuforge {

enum class CompileMode { Uniform, Nonuniform };

struct CompileOptions {
    CompileMode mode = CompileMode::Uniform;
    int blocking = 1;           ///< cap blocking m (uniform); 0 selects the smallest m <= 3 passing the bond-rank condition
    double tol = kDefaultTol;   ///< rank / PSD decisions
    double unitarity_tol = 1e-9;
    std::size_t dim_cap = 0;    ///< dense cap for contractions (0 = default)
    CMatrix sigma;              ///< cap weight override (uniform only; empty = maximally mixed)
    CMatrix tau;
    bool check_unitarity = true;
};

/// One merge of the tree.
struct MergeRecord {
    int level = 0;                 ///< 1-based tree level
    std::size_t first = 0, cut = 0, last = 0; ///< 0-based sites; merge across the bond after `cut`
    int bond_dim = 1;
    double C = 1.0;                ///< ||M||_1
    double padded_C = 1.0;
    int rotations = 0;
    std::size_t pads = 0;
    std::size_t terms = 1;         ///< LCU terms after padding
    double predicted_success = 1.0; ///< sin((2l+1) theta)
    double lcu_residual = 0.0;     ///< max |sum c_i W_i - M|
    double lcu_weight_error = 0.0; ///< |sum c_i - ||M||_1|
    double measured_success = -1.0; ///< filled by measure_merge_success (-1 = not measured)
    int ancilla = -1;
    std::vector<int> pad_regs;
    std::vector<int> legs;         ///< bond legs M maps to |00>
    NodePtr node;
    std::shared_ptr<const MergePlan> plan;
};

struct QReport {
    double q = 1.0;               ///< q_unif (uniform) or max_k q_k (nonuniform)
    std::vector<double> q_k;      ///< nonuniform only
    double bound = 1.0;           ///< sqrt(D) / s_min (nonuniform only)
    double s_min = 1.0;
};

struct CompileResult {
    Circuit circuit;
    CompileMode mode = CompileMode::Uniform;
    std::size_t N = 0;
    int d = 0;
    std::vector<int> ancilla_manifest; ///< every non-physical register; expected final state |0>
    QReport q;
    DepthReport depth;
    std::vector<MergeRecord> merges;
    int blocking = 1;
    CapPair caps;                  ///< uniform caps
    std::vector<CapPair> cut_caps; ///< nonuniform caps per cut
    double unitarity_residual = 0.0;
};

/// Compiles N sites of a uniform MPU (b-form inputs are converted to open form first).
CompileResult compile_uniform(const UniformMpu &mpu, std::size_t N, const CompileOptions &opts = {});
/// Compiles a site-dependent chain using its Choi canonical form.
CompileResult compile_nonuniform(const MpoChain &chain, const CompileOptions &opts = {});

/// Open form of a uniform MPU: unchanged if open, otherwise the reachable part of the
/// boundary-operator conversion.
UniformMpu open_form(const UniformMpu &mpu);

/// Smallest m in [1, max_m] passing the bond-rank test; throws UnsupportedError otherwise.
int select_blocking(const UniformMpu &mpu, double tol = kDefaultTol, int max_m = 3);

struct SimulationReport {
    CMatrix action;        ///< physical block of the circuit with ancillas |0> in and out
    double metric = 0.0;   ///< 1 - |Tr(U^dagger V)| / dim against the target (if given)
    double max_error = 0.0; ///< entrywise error after phase alignment (if given)
    double leakage = 0.0;  ///< max over inputs of the norm outside the ancilla-|0> sector
};

/**
 * Runs the circuit on every physical basis state with ancillas |0>.  When @p target
 * is non-empty, the equivalence metric against it is filled in.
 */
SimulationReport simulate(const Circuit &circuit, const CMatrix &target = {});

/// Simulates every merge node on its own support and records the measured
/// ancilla-|0> amplitude (the value farthest from 1 over up to @p max_inputs basis inputs).
void measure_merge_success(CompileResult &result, std::size_t max_inputs = 64);

struct ScalingRow {
    std::size_t N = 0;
    std::uint64_t depth = 0;      ///< oracle-call depth
    std::uint64_t cost_depth = 0; ///< with the linear merge term
    double predicted = 0.0;       ///< N^{1 + log2 q}
    double ratio = 0.0;           ///< cost_depth / predicted
};

struct ScalingReport {
    double q = 1.0;
    double exponent = 1.0;        ///< 1 + log2 q
    double fitted_exponent = 0.0; ///< least-squares slope of log cost_depth vs log N
    double max_over_min = 1.0;
    double limit = 4.0;
    bool bounded = true;
    std::vector<ScalingRow> rows;
};

/// Compiles for every N (depth counting only) and checks the ratio spread.
/// Up to @p jobs sizes are compiled concurrently.
ScalingReport depth_scaling_report(const UniformMpu &mpu, const std::vector<std::size_t> &N_list,
                                   const CompileOptions &opts = {}, double limit = 4.0, int jobs = 1);

} // namespace mpuforge
