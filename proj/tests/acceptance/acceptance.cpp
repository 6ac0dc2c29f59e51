// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Acceptance run: one PASS/FAIL line per headline criterion, each measured at
 * its stated tolerance.  Reference values come from dense contractions, an
 * independent SVD and directly constructed target matrices.  Exits nonzero if
 * any criterion fails.
 */
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "mpuforge/compiler.hpp"
#include "mpuforge/corpus.hpp"
#include "mpuforge/errors.hpp"
#include "mpuforge/isometry.hpp"
#include "mpuforge/lcu.hpp"
#include "mpuforge/proptest.hpp"

using namespace mpuforge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [violated: " << what << "]";
        }
    }
};

CMatrix mcz_target(std::size_t N) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << N);
    CMatrix t = CMatrix::Identity(dim, dim);
    t(0, 0) = -1.0;
    return t;
}

double svd_trace_norm(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> js(m);
    return js.singularValues().sum();
}

/// Compiles shared by criteria 1-4: success amplitudes are measured on each.
std::vector<std::pair<std::string, CompileResult>> &compiled() {
    static std::vector<std::pair<std::string, CompileResult>> all;
    return all;
}

CompileOptions auto_blocking() {
    CompileOptions o;
    o.blocking = 0;
    return o;
}

// 1. Uniform end-to-end exactness on multi-control-Z.
void criterion1(Outcome &o) {
    double metric = 0.0, leak = 0.0, t4 = 0.0;
    for (std::size_t N = 2; N <= 4; ++N) {
        const auto t0 = Clock::now();
        CompileResult r = compile_uniform(mpu_multicontrol_z(), N);
        const SimulationReport s = simulate(r.circuit, mcz_target(N));
        if (N == 4)
            t4 = seconds_since(t0);
        metric = std::max(metric, s.metric);
        leak = std::max(leak, s.leakage);
        compiled().emplace_back("multicontrol-z N=" + std::to_string(N), std::move(r));
    }
    o.detail << "multi-control-Z N=2..4: max metric " << metric << " (<= 1e-9), max leakage " << leak
             << " (<= 1e-9), N=4 compile+simulate " << t4 << " s (<= 60 s)";
    o.require(metric <= 1e-9, "metric");
    o.require(leak <= 1e-9, "leakage");
    o.require(t4 <= 60.0, "runtime");
}

// 2. Site-dependent end-to-end exactness.
void criterion2(Outcome &o) {
    double worst = 0.0;
    for (const char *name : {"product", "perturbed-mcz", "two-site-random"}) {
        const CorpusEntry e = corpus_entry(name, 4);
        CompileResult r = compile_nonuniform(e.chain);
        const SimulationReport s = simulate(r.circuit, contract(e.chain));
        o.detail << name << " N=4 metric " << s.metric << "; ";
        worst = std::max({worst, s.metric, s.leakage});
        compiled().emplace_back(std::string(name) + " N=4", std::move(r));
    }
    o.detail << "worst " << worst << " (<= 1e-8)";
    o.require(worst <= 1e-8, "metric");
}

// 3. Lee-Yang MPU: unitarity, fusion rules, compiled circuit.
void criterion3(Outcome &o) {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    double unit = 0.0;
    for (int t = 0; t < 10; ++t) {
        const LeeYangMpu ly = lee_yang_mpu(angle(rng), angle(rng));
        for (std::size_t N : {2u, 3u})
            unit = std::max(unit, is_unitary(ly.open().chain(N)).residual);
    }
    const FusionCheck f = lee_yang_fusion_mpo_check(2);
    const UniformMpu ly = lee_yang_mpu(std::numbers::pi / 2, 0.0).open();
    CompileResult r = compile_uniform(ly, 2, auto_blocking());
    const SimulationReport s = simulate(r.circuit, contract(ly.chain(2)));
    compiled().emplace_back("lee-yang N=2", std::move(r));
    o.detail << "unitarity residual (10 angle pairs, N=2,3) " << unit << " (<= 1e-9); |O_s^2 - O_e - O_s| "
             << f.sigma_squared << ", |O_e^2 - O_e| " << f.e_idempotent << " (<= 1e-9); compiled N=2 metric "
             << s.metric << ", max entry error " << s.max_error << " (<= 1e-8)";
    o.require(unit <= 1e-9, "unitarity");
    o.require(f.sigma_squared <= 1e-9 && f.e_idempotent <= 1e-9, "fusion");
    o.require(s.metric <= 1e-8 && s.max_error <= 1e-8, "compiled circuit");
}

// 4. Deterministic amplification and padding identity.
void criterion4(Outcome &o) {
    compiled().emplace_back("identity N=4", compile_uniform(mpu_identity(2), 4));
    compiled().emplace_back("redundant-bond N=3 (site-dependent)", compile_nonuniform(mpu_redundant_bond().chain(3)));
    double worst = 0.0;
    std::size_t merges = 0;
    for (auto &[name, r] : compiled()) {
        measure_merge_success(r);
        for (const MergeRecord &m : r.merges) {
            worst = std::max(worst, std::abs(m.measured_success - 1.0));
            ++merges;
        }
    }
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(1.0, 50.0);
    double pad = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const PaddingPlan p = plan_padding(dist(rng));
        pad = std::max(pad, std::abs(std::sin((2.0 * p.rotations + 1.0) * std::asin(1.0 / p.padded_C)) - 1.0));
    }
    o.detail << merges << " merges in " << compiled().size() << " compiles: max |success - 1| " << worst
             << " (<= 1e-10); padding identity over 1000 C: max error " << pad << " (<= 1e-12)";
    o.require(worst <= 1e-10, "success amplitude");
    o.require(pad <= 1e-12, "padding");
}

// 5. Decomposition weight equals the trace norm; exact reconstruction.
void criterion5(Outcome &o) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dim(1, 16);
    double weight = 0.0, recon = 0.0;
    auto check = [&](const CMatrix &m) {
        const LcuDecomposition lcu = lcu_decompose(m);
        double sum = 0.0;
        for (double c : lcu.coefficients)
            sum += c;
        weight = std::max(weight, std::abs(sum - svd_trace_norm(m)));
        recon = std::max(recon, max_abs(lcu.reconstruct() - m));
    };
    for (int t = 0; t < 100; ++t) {
        const int n = dim(rng);
        const int r = std::uniform_int_distribution<int>(1, n)(rng);
        check(random_matrix(n, r, rng) * random_matrix(r, n, rng));
    }
    std::size_t ops = 0;
    for (const UniformMpu &u : {mpu_identity(2), mpu_multicontrol_z(), lee_yang_mpu(std::numbers::pi / 2, 0.0).open()}) {
        check(merge_operator(compute_caps_uniform(u, select_blocking(u))));
        ++ops;
    }
    for (const char *name : {"product", "perturbed-mcz", "two-site-random", "redundant-bond"}) {
        const SchmidtData data = choi_canonicalize(corpus_entry(name, 4).chain);
        for (std::size_t k = 1; k < data.canonical.size(); ++k) {
            check(merge_operator(compute_caps_nonuniform(data.canonical, k)));
            ++ops;
        }
    }
    o.detail << "100 random matrices + " << ops << " corpus merge operators: max |sum c - ||M||_1| " << weight
             << ", max reconstruction residual " << recon << " (both <= 1e-10)";
    o.require(weight <= 1e-10, "weight");
    o.require(recon <= 1e-10, "reconstruction");
}

// 6. Conditioning bound and q_unif = ||M||_1.
void criterion6(Outcome &o) {
    double excess = -1e300, qdiff = 0.0;
    std::size_t checked = 0;
    for (const std::string &name : corpus_names())
        for (std::size_t N = 2; N <= 5; ++N) {
            const SchmidtData data = choi_canonicalize(corpus_entry(name, N).chain);
            int D = 1;
            for (const RVector &s : data.schmidt)
                D = std::max(D, static_cast<int>(s.size()));
            const double q = conditioning_nonuniform(data).q;
            excess = std::max(excess, q - std::sqrt(static_cast<double>(D)) / data.s_min);
            ++checked;
        }
    for (const UniformMpu &u : {mpu_identity(2), mpu_multicontrol_z(), lee_yang_mpu(std::numbers::pi / 2, 0.0).open(),
                                lee_yang_mpu(0.3, 2.0).open()}) {
        const CapPair caps = compute_caps_uniform(u, select_blocking(u));
        qdiff = std::max(qdiff, std::abs(conditioning_uniform(caps) - svd_trace_norm(merge_operator(caps))));
    }
    o.detail << checked << " corpus chains (N=2..5): max (q - sqrt(D)/s_min) " << excess
             << " (<= 1e-10); max |q_unif - ||M||_1| " << qdiff << " (<= 1e-10)";
    o.require(excess <= 1e-10, "bound");
    o.require(qdiff <= 1e-10, "q_unif");
}

// 7. Depth scaling from IR counting.
void criterion7(Outcome &o) {
    const auto t0 = Clock::now();
    const std::vector<std::size_t> sizes{4, 8, 16, 32, 64};
    bool all = true;
    for (const UniformMpu &u : {mpu_identity(2), mpu_multicontrol_z(), lee_yang_mpu(std::numbers::pi / 2, 0.0).open()}) {
        const ScalingReport s = depth_scaling_report(u, sizes, auto_blocking(), 4.0, 5);
        o.detail << u.name << ": exponent " << s.exponent << ", fitted " << s.fitted_exponent << ", max/min "
                 << s.max_over_min << "; ";
        all = all && s.max_over_min <= 4.0;
    }
    const double t = seconds_since(t0);
    o.detail << "bench " << t << " s (<= 120 s)";
    o.require(all, "ratio spread <= 4");
    o.require(t <= 120.0, "runtime");
}

// 8. Isometry property suites.
void criterion8(Outcome &o) {
    std::size_t cases = 0, failed = 0;
    double gauge = 0.0;
    for (const char *tag : {"isometry-cut", "isometry-all-n"}) {
        const SuiteReport r = run_lemma_suite(tag, 8);
        for (const PropertyCase &c : r.cases) {
            ++cases;
            if (!c.passed) {
                ++failed;
                o.detail << "failed: " << c.descriptor << " (" << c.value << "); ";
            }
            if (c.descriptor.find("gauge") != std::string::npos)
                gauge = std::max(gauge, c.value);
        }
    }
    o.detail << cases - failed << "/" << cases << " cases pass at their tolerances (1e-9); max q_k gauge change "
             << gauge << " (<= 1e-10)";
    o.require(failed == 0, "suite cases");
    o.require(gauge <= 1e-10, "gauge invariance");
}

// 9. Bond-rank condition discriminates.
void criterion9(Outcome &o) {
    const bool mcz = check_assumption1(mpu_multicontrol_z());
    const UniformMpu ly_open = lee_yang_mpu(std::numbers::pi / 2, 0.0).open();
    const int ly_m = select_blocking(ly_open);
    const bool ly = check_assumption1(ly_open, kDefaultTol, ly_m);
    const bool redundant = check_assumption1(mpu_redundant_bond());
    int code = 0;
    std::string message;
    try {
        compile_uniform(mpu_redundant_bond(), 4, auto_blocking());
    } catch (const Error &e) {
        code = exit_code_for(e.kind());
        message = e.what();
    }
    o.detail << "multi-control-Z " << (mcz ? "passes" : "fails") << "; Lee-Yang " << (ly ? "passes" : "fails")
             << " (blocking m=" << ly_m << "); redundant-bond " << (redundant ? "passes" : "fails")
             << ", compile exit code " << code << " (\"" << message << "\")";
    o.require(mcz && ly, "accepts valid MPUs");
    o.require(!redundant && code == 4, "rejects redundant bond with code 4");
}

} // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<void(Outcome &)>>> criteria{
        {"uniform exactness", criterion1},     {"site-dependent exactness", criterion2},
        {"Lee-Yang construction", criterion3}, {"deterministic amplification", criterion4},
        {"decomposition optimality", criterion5}, {"conditioning bound", criterion6},
        {"depth scaling", criterion7},         {"isometry suites", criterion8},
        {"bond-rank condition", criterion9}};
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            criteria[k].second(o);
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %zu %s  %s: %s  (%.1f s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first,
                    o.detail.str().c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
