// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * End-to-end tests of the command-line tool: reports, exit codes and the
 * compile -> simulate round trip.  The tool path is the first argument.
 */
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "mpuforge/corpus.hpp"
#include "mpuforge/json_io.hpp"

using namespace mpuforge;
namespace fs = std::filesystem;

namespace {

std::string g_tool;

struct ToolRun {
    int code = -1;
    std::string out;
};

ToolRun run(const std::string &args, const std::string &env = {}) {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + g_tool + "' " + args + " 2>/dev/null";
    ToolRun r;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("mpuforge_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    [[nodiscard]] std::string path(const std::string &name) const { return (dir_ / name).string(); }

    /// export -> compile -> simulate against the exported chain; returns the simulate report.
    json round_trip(const std::string &source, const std::string &extra = {}) {
        const std::string chain = path("chain.json"), circuit = path("circuit.json");
        EXPECT_EQ(run("export " + source + " -o " + chain).code, 0);
        EXPECT_EQ(run("compile " + source + " " + extra + " -o " + circuit).code, 0);
        const ToolRun s = run("simulate --circuit " + circuit + " --target " + chain);
        EXPECT_EQ(s.code, 0) << s.out;
        return json::parse(s.out);
    }

  private:
    fs::path dir_;
};

} // namespace

TEST_F(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("verify --corpus no-such-entry -N 3").code, 2);
}

TEST_F(Cli, VerifyMulticontrolZ) {
    const ToolRun r = run("verify --corpus multicontrol-z -N 3");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["assumption1"]["ok"].get<bool>());
    EXPECT_TRUE(j["unitary"].get<bool>());
    EXPECT_LE(j["q"].get<double>(), j["bound"].get<double>() + 1e-10);
    EXPECT_EQ(j["schmidt"].size(), 2u);
}

TEST_F(Cli, VerifyIdentityHasUnitQ) {
    const ToolRun r = run("verify --corpus identity -N 3");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(json::parse(r.out)["q"].get<double>(), 1.0, 1e-12);
}

TEST_F(Cli, VerifyNonUnitaryFileExitsTwoWithResidual) {
    MpoChain c = mpu_identity(2).chain(2);
    for (cplx &x : c.tensors[0].entries)
        x *= 2.0;
    write_chain_file(c, path("scaled.json"));
    const ToolRun r = run("verify --input " + path("scaled.json"));
    EXPECT_EQ(r.code, 2);
    const json j = json::parse(r.out);
    EXPECT_FALSE(j["unitary"].get<bool>());
    EXPECT_NEAR(j["unitary_residual"].get<double>(), 3.0, 1e-12);
}

TEST_F(Cli, MissingInputFile) { EXPECT_EQ(run("verify --input " + path("absent.json")).code, 2); }

TEST_F(Cli, RedundantBondUnsupported) {
    EXPECT_EQ(run("compile --corpus redundant-bond -N 4 --mode uniform -o " + path("c.json")).code, 4);
}

TEST_F(Cli, DimCapResourceError) {
    EXPECT_EQ(run("--dim-cap 4 verify --corpus multicontrol-z -N 3").code, 3);
    EXPECT_EQ(run("verify --corpus multicontrol-z -N 3", "MPUFORGE_DIM_CAP=4").code, 3);
    EXPECT_EQ(run("verify --corpus multicontrol-z -N 3", "MPUFORGE_DIM_CAP=64").code, 0);
}

TEST_F(Cli, IdentityRoundTripExact) {
    const json j = round_trip("--corpus identity -N 4");
    EXPECT_LE(j["equivalence_metric"].get<double>(), 1e-12);
    EXPECT_LE(j["ancilla_leakage"].get<double>(), 1e-12);
}

TEST_F(Cli, CorpusRoundTrips) {
    const std::pair<const char *, const char *> cases[] = {{"--corpus multicontrol-z -N 4", ""},
                                                           {"--corpus product -N 4", ""},
                                                           {"--corpus perturbed-mcz -N 3", ""},
                                                           {"--corpus two-site-random -N 4", ""},
                                                           {"--corpus redundant-bond -N 3", "--mode nonuniform"}};
    for (const auto &[src, extra] : cases) {
        const json j = round_trip(src, extra);
        EXPECT_LE(j["equivalence_metric"].get<double>(), 1e-9) << src;
        EXPECT_LE(j["ancilla_leakage"].get<double>(), 1e-9) << src;
    }
}

TEST_F(Cli, LeeYangRoundTrip) {
    const json j = round_trip("--corpus lee-yang -N 2 --alpha 1.5707963267948966 --beta 0", "--blocking-m 0");
    EXPECT_LE(j["equivalence_metric"].get<double>(), 1e-8);
}

TEST_F(Cli, CompileReportAndCaps) {
    const ToolRun r = run("compile --corpus multicontrol-z -N 4 --dump-caps -o " + path("c.json"));
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["merges"].size(), 3u);
    for (const json &m : j["merges"])
        EXPECT_NEAR(m["success"].get<double>(), 1.0, 1e-10);
    EXPECT_TRUE(j.contains("caps"));
    EXPECT_TRUE(fs::exists(path("c.json")));
}

TEST_F(Cli, BenchCsv) {
    const ToolRun r = run("--format csv bench --corpus identity,multicontrol-z --sizes 4,8,16");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("mpu,N,depth,cost_depth,predicted,ratio", 0), 0u);
    EXPECT_NE(r.out.find("identity,16,1,31,16,"), std::string::npos);
}

TEST_F(Cli, ProptestSingleTag) {
    const ToolRun r = run("--seed 3 proptest --tag isometry-cut");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_GE(j["suites"][0]["cases"].size(), 3u);
    EXPECT_EQ(run("proptest --tag no-such-tag").code, 2);
}

int main(int argc, char **argv) {
    ::testing::InitGoogleTest(&argc, argv);
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path to mpuforge tool>\n", argv[0]);
        return 2;
    }
    g_tool = fs::absolute(argv[1]).string();
    return RUN_ALL_TESTS();
}
