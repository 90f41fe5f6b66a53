#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;
using gct::cli::run;

std::string corpus(const std::string& name) { return std::string(GCTORIC_DATA_DIR) + "/polytopes/" + name; }

struct Result {
    int code;
    nlohmann::json report;
    std::string summary;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, nlohmann::json::parse(out.str()), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "gctoric_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

TEST(Cli, CertifyRectangle) {
    auto r = invoke({"certify", corpus("rect.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.report["command"], "certify");
    EXPECT_TRUE(r.report["pass"].get<bool>());
    EXPECT_EQ(r.report["result"]["residualTorusRank"], 1);
    EXPECT_EQ(r.report["result"]["n"], 3);
}

TEST(Cli, ValidateWeightedTriangleFails) {
    auto r = invoke({"validate", corpus("weighted-triangle.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.report["pass"].get<bool>());
    EXPECT_NE(r.summary.find("(1, 0)"), std::string::npos) << r.summary;
    EXPECT_NE(r.summary.find("smoothness"), std::string::npos) << r.summary;
}

TEST(Cli, CertificationFailureExitsThree) {
    auto r = invoke({"certify", corpus("weighted-triangle.json")});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.report["error"]["kind"], "NotDelzant");
    EXPECT_TRUE(r.report["error"].contains("witnesses"));
}

TEST(Cli, ChartsInvolutivity) {
    auto r = invoke({"charts", "cgu-model", "involutivity", "--seed", "7"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.report["pass"].get<bool>());
    EXPECT_EQ(r.report["seed"], 7);
}

TEST(Cli, PlanFiles) {
    std::string plans = std::string(GCTORIC_DATA_DIR) + "/plans/";
    auto locus = invoke({"charts", "cgu-model", "involutivity", "--plan", plans + "cgu-locus.json"});
    EXPECT_EQ(locus.code, 0);
    EXPECT_EQ(locus.report["points"], 3);
    auto annulus = invoke({"charts", "cgu-model", "spinor-match", "--plan", plans + "cgu-annulus.json"});
    EXPECT_EQ(annulus.code, 0);
    EXPECT_EQ(annulus.report["seed"], 11);
    EXPECT_EQ(invoke({"charts", "cgu-model", "involutivity", "--plan", corpus("square.json")}).code, 2);
}

TEST(Cli, ReportsAreByteStable) {
    std::vector<std::string> args{"charts", "cgu-model", "involutivity", "--seed", "7"};
    std::ostringstream a, b, e;
    run(args, a, e);
    run(args, b, e);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Cli, MalformedJsonReportsPosition) {
    auto path = scratch("broken.json");
    std::ofstream(path) << "{\n  \"dim\": 2,\n  \"facets\": [\n    {\"a\": [1, 0] \"b\": 1}\n  ]\n}\n";
    auto r = invoke({"validate", path.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.report["error"]["line"], 4);
    EXPECT_GT(r.report["error"]["column"].get<int>(), 1);
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(invoke({"validate", "/nonexistent/p.json"}).code, 2);
    EXPECT_EQ(invoke({"charts", "no-such-model", "involutivity"}).code, 2);
    EXPECT_EQ(invoke({"cut", corpus("rect.json"), "--axis", "2", "--delta", "1/0"}).code, 2);
    EXPECT_EQ(invoke({"orth", corpus("rect.json"), "--axis", "9"}).code, 2);
    EXPECT_EQ(invoke({"commute", corpus("unit-square.json"), "--axes", "2"}).code, 2);
    EXPECT_EQ(invoke({"bogus"}).code, 2);
}

TEST(Cli, OtherCommands) {
    EXPECT_EQ(invoke({"orth", corpus("rect.json"), "--axis", "2"}).code, 0);
    auto cut = invoke({"cut", corpus("rect.json"), "--axis", "2"});
    EXPECT_EQ(cut.code, 0);
    EXPECT_TRUE(cut.report["result"]["delzant"].get<bool>());
    EXPECT_EQ(invoke({"reduce", corpus("square.json"), "--axes", "1..1"}).code, 0);
    EXPECT_EQ(invoke({"commute", corpus("square.json"), "--axes", "1"}).code, 0);
    auto m = invoke({"morse", corpus("unit-square.json"), "--xi", "1,2"});
    EXPECT_EQ(m.code, 0);
    EXPECT_EQ(m.report["result"]["betti"], nlohmann::json::parse("[1, 2, 1]"));
    EXPECT_EQ(invoke({"morse", corpus("unit-square.json"), "--xi", "1,0"}).code, 2);
    EXPECT_EQ(invoke({"morse", corpus("weighted-triangle.json")}).code, 1);
}

TEST(Cli, SuiteWithCorpus) {
    auto r = invoke({"suite", "--corpus", std::string(GCTORIC_DATA_DIR) + "/polytopes", "--quiet"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.summary.empty());
    for (const auto& item : r.report["corpus"])
        if (item.contains("matchesManifest")) EXPECT_TRUE(item["matchesManifest"].get<bool>()) << item["file"];
}

TEST(Cli, OutputFile) {
    auto path = scratch("report.json");
    fs::remove(path);
    std::ostringstream out, err;
    EXPECT_EQ(run({"--output", path.string(), "certify", corpus("rect.json")}, out, err), 0);
    EXPECT_TRUE(out.str().empty());
    std::ifstream in(path);
    EXPECT_EQ(nlohmann::json::parse(in)["command"], "certify");
}

TEST(Cli, ToleranceProfile) {
    ::setenv(gct::cli::kToleranceProfileEnv, "strict", 1);
    auto strict = invoke({"charts", "cgu-model", "involutivity"});
    ::setenv(gct::cli::kToleranceProfileEnv, "loose", 1);
    auto loose = invoke({"charts", "cgu-model", "involutivity"});
    ::setenv(gct::cli::kToleranceProfileEnv, "sloppy", 1);
    auto bad = invoke({"charts", "cgu-model", "involutivity"});
    ::unsetenv(gct::cli::kToleranceProfileEnv);
    auto normal = invoke({"charts", "cgu-model", "involutivity"});
    double t = normal.report["tolerance"].get<double>();
    EXPECT_DOUBLE_EQ(strict.report["tolerance"].get<double>(), t / 100);
    EXPECT_DOUBLE_EQ(loose.report["tolerance"].get<double>(), t * 100);
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, BinaryExitCode) {
    std::string cmd = std::string("\"") + GCTORIC_CLI_PATH + "\" --quiet validate \"" +
                      corpus("weighted-triangle.json") + "\" > /dev/null";
    int status = std::system(cmd.c_str());
    ASSERT_NE(status, -1);
    EXPECT_EQ(WEXITSTATUS(status), 1);
}

}  // namespace
