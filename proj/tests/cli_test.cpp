#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <gtest/gtest.h>

#include "framediag/cli.hpp"

namespace fd = framediag;
namespace cli = framediag::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "framediag");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    auto parsed = cli::parse_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
    if (const int* code = std::get_if<int>(&parsed)) return {*code, out.str(), err.str()};
    const int code = cli::run_command(std::get<cli::RunConfig>(parsed), out, err);
    return {code, out.str(), err.str()};
}

fd::json result_of(const Run& r) { return fd::json::parse(r.out).at("result"); }

class TempDir {
public:
    TempDir() : path_(std::filesystem::temp_directory_path() / ("framediag_cli_" + std::to_string(::getpid()))) {
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST(Cli, ExampleIdentity) {
    const auto r = run({"example", "--id", "ex-identity", "--dim", "64"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = fd::json::parse(r.out);
    EXPECT_EQ(j["tool"]["name"], "framediag");
    EXPECT_EQ(j["config"]["id"], "ex-identity");
    EXPECT_EQ(j["result"]["mode"], "dense");
    EXPECT_LE(j["result"]["cross_gram"]["identity_distance"].get<double>(), 1e-12);
}

TEST(Cli, ExampleCanonicalIdempotent) {
    const auto r = run({"example", "--id", "ex-canonical", "--dim", "30"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(result_of(r)["cross_gram"]["idempotency_defect"].get<double>(), 1e-12);
    EXPECT_TRUE(result_of(r)["duality"]["is_dual_pair"].get<bool>());
}

TEST(Cli, LargeExampleUsesSparseRoute) {
    const auto r = run({"example", "--id", "ex-norm89", "--dim", "5000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = result_of(r);
    EXPECT_EQ(res["mode"], "sparse");
    EXPECT_FALSE(res.contains("cross_gram"));
    EXPECT_TRUE(res["pairing_bounds"]["certainly_not_dual"].get<bool>());
}

TEST(Cli, UnknownExampleIsValidationFailure) {
    const auto r = run({"example", "--id", "ex-nope", "--dim", "4"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ex-identity"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"example", "--id", "ex-hs"}).code, 2);
    EXPECT_EQ(run({"example", "--id", "ex-hs", "--dim", "4", "--tol", "2"}).code, 2);
    EXPECT_EQ(run({"example", "--id", "ex-hs", "--dim", "4", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"sweep", "--id", "ex-hs", "--dims", "10"}).code, 2);
    EXPECT_EQ(run({"sweep", "--id", "ex-hs", "--dims", "10,5"}).code, 2);
    EXPECT_EQ(run({"battery", "--dims", "5..2"}).code, 2);
    EXPECT_EQ(run({"battery", "--trials", "0"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CrossGramDimensionMismatch) {
    TempDir dir;
    const auto a = dir.write("a.json", R"({"kind":"random_frame","d":3,"n":4,"seed":1})");
    const auto b = dir.write("b.json", R"({"kind":"random_frame","d":2,"n":4,"seed":2})");
    const auto r = run({"cross-gram", "--f", a, "--g", b});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ambient dimensions differ"), std::string::npos);
}

TEST(Cli, CrossGramOfFiles) {
    TempDir dir;
    const auto a = dir.write("a.json", R"({"kind":"random_frame","d":3,"n":5,"seed":1})");
    const auto b = dir.write("b.json", R"({"kind":"random_frame","d":3,"n":5,"seed":2})");
    const auto r = run({"cross-gram", "--f", a, "--g", b});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto res = result_of(r);
    EXPECT_EQ(res["n"], 5);
    EXPECT_EQ(res["cross_gram"]["rank"], 3);
    EXPECT_FALSE(res["cross_gram"]["invertible"].get<bool>());
}

TEST(Cli, CrossGramPadsBasisKinds) {
    TempDir dir;
    const auto f = dir.write("f.json", R"({"kind":"scaled_basis","weight":{"rule":"inverse_index"}})");
    const auto g = dir.write("g.json", R"({"kind":"paper_example","id":"ex-hs","role":"g"})");
    const auto file_run = run({"cross-gram", "--f", f, "--g", g, "--dim", "3000"});
    const auto example_run = run({"example", "--id", "ex-hs", "--dim", "3000"});
    ASSERT_EQ(file_run.code, 0) << file_run.err;
    ASSERT_EQ(example_run.code, 0) << example_run.err;
    EXPECT_EQ(result_of(file_run)["spectral"], result_of(example_run)["spectral"]);
}

TEST(Cli, ClassifyNeedsDimForInfiniteKinds) {
    TempDir dir;
    const auto s = dir.write("s.json", R"({"kind":"scaled_basis","weight":{"rule":"index"}})");
    EXPECT_EQ(run({"classify", "--input", s}).code, 2);
    const auto r = run({"classify", "--input", s, "--dim", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(result_of(r)["classification"]["bessel_bound"].get<double>(), 100.0, 1e-9);
}

TEST(Cli, ClassifyReportsParseErrors) {
    TempDir dir;
    const auto s = dir.write("bad.json", "{\"kind\": \"explicit\",\n \"columns\": [[[1, 0], [0, 1]], [[1, 0]]]}");
    const auto r = run({"classify", "--input", s});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/columns/1"), std::string::npos);
    EXPECT_EQ(run({"classify", "--input", dir.path("missing.json")}).code, 2);
}

TEST(Cli, DualCheck) {
    TempDir dir;
    const auto f = dir.write("f.json", R"({"kind":"paper_example","id":"ex-canonical","role":"f"})");
    const auto g = dir.write("g.json", R"({"kind":"paper_example","id":"ex-canonical","role":"g"})");
    const auto h = dir.write("h.json", R"({"kind":"paper_example","id":"ex-norm89","role":"g"})");
    const auto good = run({"dual-check", "--f", f, "--g", g, "--dim", "12"});
    ASSERT_EQ(good.code, 0) << good.err;
    EXPECT_TRUE(result_of(good)["duality"]["is_dual_pair"].get<bool>());
    const auto f89 = dir.write("f89.json", R"({"kind":"paper_example","id":"ex-norm89","role":"f"})");
    const auto bad = run({"dual-check", "--f", f89, "--g", h, "--dim", "12", "--probes", "3", "--seed", "5"});
    ASSERT_EQ(bad.code, 0) << bad.err;
    EXPECT_FALSE(result_of(bad)["duality"]["is_dual_pair"].get<bool>());
    EXPECT_EQ(result_of(bad)["duality"]["probes"], 3);
}

TEST(Cli, SweepNorm89) {
    const auto r = run({"sweep", "--id", "ex-norm89", "--dims", "10,100,1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = result_of(r)["rows"];
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[2]["op_norm"].get<double>(), 0.94601, 1e-3);
}

TEST(Cli, BatteryWritesFileAtomically) {
    TempDir dir;
    const auto out = dir.path("battery.json");
    const auto r = run({"battery", "--seed", "42", "--trials", "3", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(std::filesystem::exists(out));
    EXPECT_FALSE(std::filesystem::exists(out + ".tmp"));
    std::ifstream in(out);
    const auto j = fd::json::parse(in);
    EXPECT_TRUE(j["result"]["all_passed"].get<bool>());
    EXPECT_FALSE(j["config"].contains("threads"));
}

TEST(Cli, BatteryFailureExitsThree) {
    // A tolerance far below rounding error makes the exact-equality checks fail.
    const auto r = run({"battery", "--trials", "2", "--tol", "1e-300"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("failed"), std::string::npos);
    EXPECT_FALSE(result_of(r)["all_passed"].get<bool>());
}

TEST(Cli, ToleranceFromEnvironment) {
    ::setenv(cli::tol_env, "1e-8", 1);
    const auto r = run({"example", "--id", "ex-hs", "--dim", "4"});
    const auto overridden = run({"example", "--id", "ex-hs", "--dim", "4", "--tol", "1e-6"});
    ::setenv(cli::tol_env, "abc", 1);
    const auto bad = run({"example", "--id", "ex-hs", "--dim", "4"});
    ::unsetenv(cli::tol_env);
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(fd::json::parse(r.out)["config"]["tol"], 1e-8);
    EXPECT_EQ(fd::json::parse(overridden.out)["config"]["tol"], 1e-6);
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, TextFormat) {
    const auto r = run({"example", "--id", "ex-blocked", "--dim", "6", "--format", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("op_norm: 2"), std::string::npos);
    EXPECT_FALSE(fd::json::accept(r.out));
}
