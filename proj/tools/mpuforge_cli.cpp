// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Command-line entry point.
 *
 *   mpuforge verify   --corpus NAME -N 3          unitarity, bond rank, Schmidt data, q
 *   mpuforge compile  --corpus NAME -N 4 -o c.json circuit JSON plus a q / depth report
 *   mpuforge simulate --circuit c.json --corpus NAME -N 4
 *   mpuforge bench    --corpus identity,multicontrol-z --sizes 4,8,16,32
 *   mpuforge export   --corpus NAME -N 3 -o chain.json
 *   mpuforge proptest --tag all
 *
 * Exit codes: 0 success, 2 validation failure, 3 resource cap, 4 unsupported MPU.
 */
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpuforge/circuit_json.hpp"
#include "mpuforge/compiler.hpp"
#include "mpuforge/corpus.hpp"
#include "mpuforge/errors.hpp"
#include "mpuforge/json_io.hpp"
#include "mpuforge/proptest.hpp"

using namespace mpuforge;

namespace {

struct RunConfig {
    std::string corpus;
    std::string input;
    std::size_t N = 3;
    double alpha = 1.5707963267948966;
    double beta = 0.0;
    double tol = kDefaultTol;
    std::size_t dim_cap = 0;
    int blocking = 0;
    bool dump_caps = false;
    std::uint64_t seed = 7;
    std::string format = "json";
    std::string output;
    std::string report;
    std::string mode = "auto";
    std::string circuit;
    std::string target;
    std::string sizes = "4,8,16,32";
    double limit = 4.0;
    int jobs = 1;
    std::string tag = "all";
};

/// One MPU source resolved from --corpus or --input.
struct Source {
    std::string name;
    bool uniform = false;
    UniformMpu mpu;
    MpoChain chain;
};

Source load_source(const RunConfig &cfg) {
    if (cfg.corpus.empty() == cfg.input.empty())
        throw ValidationError("exactly one of --corpus and --input is required");
    Source s;
    if (!cfg.corpus.empty()) {
        const CorpusEntry e = corpus_entry(cfg.corpus, cfg.N, cfg.alpha, cfg.beta, cfg.seed);
        s.name = e.name;
        s.uniform = e.uniform;
        s.mpu = e.mpu;
        s.chain = e.chain;
    } else {
        s.name = cfg.input;
        s.chain = read_chain_file(cfg.input);
    }
    return s;
}

std::string text_value(const json &v) {
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

void emit(const json &report, const RunConfig &cfg) {
    std::ostringstream out;
    if (cfg.format == "text") {
        for (const auto &[key, value] : report.items())
            out << key << ": " << text_value(value) << "\n";
    } else {
        out << report.dump(2) << "\n";
    }
    if (cfg.output.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(cfg.output);
        if (!f)
            throw IoError("cannot write " + cfg.output);
        f << out.str();
    }
}

json caps_json(const CapPair &c) {
    return {{"L", matrix_to_json(c.L)}, {"R", matrix_to_json(c.R)}, {"full_rank", c.full_rank},
            {"blocking", c.blocking}, {"source", c.source}};
}

json q_json(const QReport &q) {
    return {{"q", q.q}, {"q_k", q.q_k}, {"bound", q.bound}, {"s_min", q.s_min}};
}

CompileOptions compile_options(const RunConfig &cfg) {
    CompileOptions o;
    o.tol = cfg.tol;
    o.blocking = cfg.blocking;
    o.dim_cap = cfg.dim_cap;
    return o;
}

int cmd_verify(const RunConfig &cfg) {
    const Source src = load_source(cfg);
    json rep;
    rep["source"] = src.name;
    rep["N"] = src.chain.size();
    const UnitarityReport u = is_unitary(src.chain, 1e-9, cfg.dim_cap);
    rep["unitary_residual"] = u.residual;
    rep["unitary"] = u.unitary;
    if (!u.unitary) {
        rep["error"] = "input is not unitary";
        emit(rep, cfg);
        return exit_code_for(ErrorKind::Validation);
    }
    if (src.uniform) {
        const int m = cfg.blocking;
        Assumption1Report a1;
        if (m == 0) {
            for (int k = 1; k <= 3; ++k) {
                a1 = assumption1_report(src.mpu, cfg.tol, k);
                if (a1.ok)
                    break;
            }
        } else {
            a1 = assumption1_report(src.mpu, cfg.tol, m);
        }
        rep["assumption1"] = {{"ok", a1.ok},
                              {"blocking", a1.blocking},
                              {"bond_dim", a1.bond_dim},
                              {"rank_left", a1.rank_left},
                              {"rank_right", a1.rank_right}};
        if (a1.ok) {
            const CapPair caps = compute_caps_uniform(src.mpu, a1.blocking, {}, {}, cfg.tol);
            rep["q_unif"] = conditioning_uniform(caps, cfg.tol);
            if (cfg.dump_caps)
                rep["caps"] = caps_json(caps);
        }
    } else {
        rep["assumption1"] = nullptr;
    }
    const SchmidtData data = choi_canonicalize(src.chain, cfg.tol);
    const SchmidtBound sb = schmidt_bound_q(data);
    json schmidt = json::array();
    for (const RVector &s : data.schmidt)
        schmidt.push_back(std::vector<double>(s.data(), s.data() + s.size()));
    rep["schmidt"] = schmidt;
    rep["s_min"] = data.s_min;
    rep["q"] = sb.q;
    rep["q_k"] = sb.q_k;
    rep["bound"] = sb.bound;
    emit(rep, cfg);
    return 0;
}

int cmd_compile(const RunConfig &cfg) {
    if (cfg.output.empty())
        throw ValidationError("compile needs --output for the circuit JSON");
    const Source src = load_source(cfg);
    const bool uniform = cfg.mode == "uniform" || (cfg.mode == "auto" && src.uniform);
    if (uniform && !src.uniform)
        throw ValidationError("uniform mode needs a uniform corpus entry");
    const CompileOptions o = compile_options(cfg);
    const CompileResult res = uniform ? compile_uniform(src.mpu, cfg.N, o) : compile_nonuniform(src.chain, o);
    write_json_file(circuit_to_json(res.circuit), cfg.output);

    json rep;
    rep["source"] = src.name;
    rep["mode"] = uniform ? "uniform" : "nonuniform";
    rep["N"] = res.N;
    rep["circuit"] = cfg.output;
    rep["blocking"] = res.blocking;
    rep["q"] = q_json(res.q);
    rep["depth"] = res.depth.depth;
    rep["cost_depth"] = res.depth.cost_depth;
    rep["per_level"] = res.depth.per_level;
    rep["registers"] = res.circuit.registers.all().size();
    rep["ancillas"] = res.ancilla_manifest.size();
    json merges = json::array();
    for (const MergeRecord &m : res.merges)
        merges.push_back({{"level", m.level},         {"sites", {m.first, m.last}},
                          {"bond_dim", m.bond_dim},   {"C", m.C},
                          {"padded_C", m.padded_C},   {"rotations", m.rotations},
                          {"pads", m.pads},           {"terms", m.terms},
                          {"success", m.predicted_success}});
    rep["merges"] = merges;
    if (cfg.dump_caps) {
        if (uniform) {
            rep["caps"] = caps_json(res.caps);
        } else {
            json cc = json::array();
            for (const CapPair &c : res.cut_caps)
                cc.push_back(caps_json(c));
            rep["caps"] = cc;
        }
    }
    RunConfig to_stdout = cfg;
    to_stdout.output = cfg.report;
    emit(rep, to_stdout);
    return 0;
}

int cmd_simulate(const RunConfig &cfg) {
    if (cfg.circuit.empty())
        throw ValidationError("simulate needs --circuit");
    const Circuit c = circuit_from_json(read_json_file(cfg.circuit));
    CMatrix target;
    if (!cfg.target.empty())
        target = contract(read_chain_file(cfg.target), cfg.dim_cap);
    else if (!cfg.corpus.empty())
        target = contract(load_source(cfg).chain, cfg.dim_cap);
    const SimulationReport s = simulate(c, target);
    json rep;
    rep["circuit"] = cfg.circuit;
    rep["physical_dim"] = s.action.rows();
    rep["ancilla_leakage"] = s.leakage;
    if (target.size() > 0) {
        rep["equivalence_metric"] = s.metric;
        rep["max_error"] = s.max_error;
    } else {
        rep["equivalence_metric"] = nullptr;
    }
    emit(rep, cfg);
    return 0;
}

std::vector<std::string> split(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int cmd_bench(const RunConfig &cfg) {
    std::vector<std::size_t> sizes;
    for (const std::string &s : split(cfg.sizes))
        sizes.push_back(static_cast<std::size_t>(std::stoul(s)));
    const std::vector<std::string> names =
        cfg.corpus.empty() ? std::vector<std::string>{"identity", "multicontrol-z", "lee-yang"} : split(cfg.corpus);
    json rep = json::array();
    std::ostringstream csv;
    csv << "mpu,N,depth,cost_depth,predicted,ratio\n";
    bool all_bounded = true;
    for (const std::string &name : names) {
        const CorpusEntry e = corpus_entry(name, 2, cfg.alpha, cfg.beta, cfg.seed);
        if (!e.uniform)
            throw ValidationError("bench needs uniform corpus entries, got " + name);
        const ScalingReport r = depth_scaling_report(e.mpu, sizes, compile_options(cfg), cfg.limit, cfg.jobs);
        json rows = json::array();
        for (const ScalingRow &row : r.rows) {
            rows.push_back({{"N", row.N}, {"depth", row.depth}, {"cost_depth", row.cost_depth},
                            {"predicted", row.predicted}, {"ratio", row.ratio}});
            csv << name << "," << row.N << "," << row.depth << "," << row.cost_depth << "," << row.predicted
                << "," << row.ratio << "\n";
        }
        rep.push_back({{"mpu", name}, {"q", r.q}, {"exponent", r.exponent},
                       {"fitted_exponent", r.fitted_exponent}, {"max_over_min", r.max_over_min},
                       {"limit", r.limit}, {"bounded", r.bounded}, {"rows", rows}});
        all_bounded = all_bounded && r.bounded;
    }
    if (cfg.format == "csv") {
        if (cfg.output.empty())
            std::cout << csv.str();
        else
            std::ofstream(cfg.output) << csv.str();
    } else {
        emit(json{{"bench", rep}, {"bounded", all_bounded}}, cfg);
    }
    return 0;
}

int cmd_export(const RunConfig &cfg) {
    if (cfg.output.empty())
        throw ValidationError("export needs --output");
    write_chain_file(load_source(cfg).chain, cfg.output);
    return 0;
}

int cmd_proptest(const RunConfig &cfg) {
    const std::vector<std::string> tags = cfg.tag == "all" ? lemma_tags() : split(cfg.tag);
    json rep = json::array();
    bool ok = true;
    for (const std::string &t : tags) {
        const SuiteReport r = run_lemma_suite(t, cfg.seed);
        ok = ok && r.passed();
        rep.push_back(r.to_json());
    }
    emit(json{{"suites", rep}, {"passed", ok}}, cfg);
    return ok ? 0 : exit_code_for(ErrorKind::Validation);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Tree-merge compiler and verifier for matrix-product unitaries"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--tol", cfg.tol, "Relative tolerance for rank and PSD decisions")->check(CLI::PositiveNumber);
    app.add_option("--dim-cap", cfg.dim_cap, "Dense dimension cap (overrides MPUFORGE_DIM_CAP)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--seed", cfg.seed, "Seed for randomized corpus entries and property suites");
    app.add_option("-o,--output", cfg.output, "Output path");

    auto add_source = [&](CLI::App *sub) {
        sub->add_option("--corpus", cfg.corpus, "Corpus entry (" + [] {
            std::string s;
            for (const std::string &n : corpus_names())
                s += (s.empty() ? "" : ", ") + n;
            return s;
        }() + ")");
        sub->add_option("--input", cfg.input, "MPO chain JSON file");
        sub->add_option("-N", cfg.N, "Number of sites")->check(CLI::PositiveNumber);
        sub->add_option("--alpha", cfg.alpha, "Lee-Yang phase alpha");
        sub->add_option("--beta", cfg.beta, "Lee-Yang phase beta");
        sub->add_option("--blocking-m", cfg.blocking, "Cap blocking length (0 = smallest passing m <= 3)")
            ->check(CLI::Range(0, 3));
        sub->add_flag("--dump-caps", cfg.dump_caps, "Include the isometry caps in the report");
    };
    CLI::App *verify = app.add_subcommand("verify", "Check unitarity, bond rank, Schmidt data and q");
    add_source(verify);
    CLI::App *compile = app.add_subcommand("compile", "Compile to a circuit JSON file");
    add_source(compile);
    compile->add_option("--mode", cfg.mode, "Compilation mode")->check(CLI::IsMember({"auto", "uniform", "nonuniform"}));
    compile->add_option("--report", cfg.report, "Write the report here instead of stdout");
    CLI::App *simulate_cmd = app.add_subcommand("simulate", "Simulate a circuit JSON file");
    add_source(simulate_cmd);
    simulate_cmd->add_option("--circuit", cfg.circuit, "Circuit JSON file")->required();
    simulate_cmd->add_option("--target", cfg.target, "MPO chain JSON file with the expected operator");
    CLI::App *bench = app.add_subcommand("bench", "Depth scaling table (IR counting only)");
    bench->add_option("--corpus", cfg.corpus, "Comma-separated uniform corpus entries");
    bench->add_option("--sizes", cfg.sizes, "Comma-separated N values");
    bench->add_option("--limit", cfg.limit, "Allowed max/min ratio spread");
    bench->add_option("--jobs", cfg.jobs, "Sizes compiled concurrently")->check(CLI::PositiveNumber);
    bench->add_option("--alpha", cfg.alpha, "Lee-Yang phase alpha");
    bench->add_option("--beta", cfg.beta, "Lee-Yang phase beta");
    bench->add_option("--blocking-m", cfg.blocking, "Cap blocking length (0 = auto)")->check(CLI::Range(0, 3));
    CLI::App *exp = app.add_subcommand("export", "Write a corpus entry as MPO chain JSON");
    add_source(exp);
    CLI::App *prop = app.add_subcommand("proptest", "Run the property suites");
    prop->add_option("--tag", cfg.tag, "Suite tag, comma-separated tags, or 'all'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code_for(ErrorKind::Validation);
    }
    if (cfg.dim_cap > 0)
        setenv("MPUFORGE_DIM_CAP", std::to_string(cfg.dim_cap).c_str(), 1);

    try {
        if (verify->parsed())
            return cmd_verify(cfg);
        if (compile->parsed())
            return cmd_compile(cfg);
        if (simulate_cmd->parsed())
            return cmd_simulate(cfg);
        if (bench->parsed())
            return cmd_bench(cfg);
        if (exp->parsed())
            return cmd_export(cfg);
        if (prop->parsed())
            return cmd_proptest(cfg);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const json::exception &e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return exit_code_for(ErrorKind::Io);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(ErrorKind::Validation);
    }
    return 0;
}
