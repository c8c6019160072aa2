// Copyright 2026 The qdotkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "qdotkit/cli.h"
#include "qdotkit/json_io.h"

using namespace qdk;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string &name) {
    fs::path d = fs::path(::testing::TempDir()) / "qdotkit_cli_test" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

const char *kConfig = R"({
  "out_dir": "out",
  "protocol": "ddot",
  "num_qubits": 6,
  "device": {"fixture": "two_pair_clusters_n6"},
  "circuits": 400,
  "shots": 300,
  "k": 2,
  "seeds": {"circuits": 1, "simulate": 2, "cluster": 3, "hamiltonians": 4, "benchmark": 5},
  "alpha": 0.1,
  "hamiltonians": 4,
  "mitigation": "cluster-inverse"
})";

const std::vector<std::string> kOutputs{"circuits.json", "circuits.txt", "counts.json", "marginals.json",
                                        "corr.json", "corr.dot", "partition.json", "cn_model.json",
                                        "tpn_model.json", "hamiltonians.json", "report.csv"};

fs::path write_config(const fs::path &dir) {
    fs::path cfg = dir / "config.json";
    write_text_file(cfg.string(), kConfig);
    return cfg;
}

}  // namespace

TEST(Cli, PlanPrintsCircuitCount) {
    Result r = run_cli({"plan", "--protocol", "ddot", "--k", "2", "--qubits", "127", "--eps", "0.1", "--delta", "0.01"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "3166\n");
}

TEST(Cli, ExitCodes) {
    Result none = run_cli({});
    EXPECT_EQ(none.code, 2);
    EXPECT_EQ(Json::parse(none.err)["error"]["type"], "usage");
    // Seeds are mandatory.
    EXPECT_EQ(run_cli({"gen-circuits", "--protocol", "ddot", "--qubits", "3", "--circuits", "5", "--out", "x"}).code, 2);
    EXPECT_EQ(run_cli({"--threads", "0", "plan"}).code, 2);
    Result bad = run_cli({"plan", "--protocol", "ddot", "--k", "2", "--qubits", "5", "--eps", "0", "--delta", "0.1"});
    EXPECT_EQ(bad.code, 3);
    EXPECT_EQ(Json::parse(bad.err)["error"]["code"], 3);
    Result io = run_cli({"estimate", "--counts", "/nonexistent/counts.json", "--k", "2", "--out", "/tmp/x.json"});
    EXPECT_EQ(io.code, 4);
    EXPECT_EQ(Json::parse(io.err)["error"]["type"], "io");
}

TEST(Cli, CoverageFailureIsValidationExit) {
    fs::path d = fresh_dir("coverage");
    std::string c = (d / "c.json").string();
    std::string n = (d / "n.json").string();
    ASSERT_EQ(run_cli({"gen-circuits", "--protocol", "ddot", "--qubits", "6", "--circuits", "3", "--seed", "1", "--out", c}).code, 0);
    ASSERT_EQ(run_cli({"simulate", "--circuits", c, "--fixture", "identity_n6", "--shots", "5", "--seed", "1", "--out", n}).code, 0);
    std::string m = (d / "m.json").string();
    ASSERT_EQ(run_cli({"estimate", "--counts", n, "--k", "2", "--out", m}).code, 0);
    Result r = run_cli({"correlations", "--marginals", m, "--out", (d / "corr.json").string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(Json::parse(r.err)["error"]["type"], "coverage");
}

TEST(Cli, CoherenceBoundOfXBasisPovm) {
    fs::path d = fresh_dir("coherence");
    std::string p = (d / "povm.json").string();
    write_json_file(p, Json{{"dim", 2}, {"effects", Json::array({Json::array({Json::array({0.5, 0}), Json::array({0.5, 0}), Json::array({0.5, 0}), Json::array({0.5, 0})}),
                                                              Json::array({Json::array({0.5, 0}), Json::array({-0.5, 0}), Json::array({-0.5, 0}), Json::array({0.5, 0})})})}});
    Result r = run_cli({"coherence-bound", "--povm", p});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(Json::parse(r.out)["cs_ac"].get<double>(), 0.3535533905932738, 1e-12);
}

TEST(Cli, PipelineMatchesSubcommandsAndThreads) {
    fs::path a = fresh_dir("pipe1");
    ASSERT_EQ(run_cli({"--threads", "1", "pipeline", "--config", write_config(a).string()}).code, 0);
    fs::path b = fresh_dir("pipe4");
    Result r4 = run_cli({"--threads", "4", "pipeline", "--config", write_config(b).string()});
    ASSERT_EQ(r4.code, 0) << r4.err;

    fs::path s = fresh_dir("steps");
    auto f = [&](const char *name) { return (s / name).string(); };
    std::vector<std::vector<std::string>> steps{
        {"gen-circuits", "--protocol", "ddot", "--qubits", "6", "--circuits", "400", "--seed", "1", "--out", f("circuits.json"),
         "--gate-lines", f("circuits.txt")},
        {"simulate", "--circuits", f("circuits.json"), "--fixture", "two_pair_clusters_n6", "--shots", "300", "--seed", "2",
         "--out", f("counts.json")},
        {"estimate", "--counts", f("counts.json"), "--k", "2", "--out", f("marginals.json")},
        {"correlations", "--marginals", f("marginals.json"), "--out", f("corr.json"), "--dot", f("corr.dot")},
        {"cluster", "--corr", f("corr.json"), "--alpha", "0.1", "--seed", "3", "--out", f("partition.json")},
        {"reconstruct", "--counts", f("counts.json"), "--partition", f("partition.json"), "--corr", f("corr.json"), "--out",
         f("cn_model.json"), "--tpn-out", f("tpn_model.json")},
        {"gen-hamiltonians", "--instances", "4", "--qubits", "6", "--seed", "4", "--out", f("hamiltonians.json")},
        {"benchmark", "--hamiltonians", f("hamiltonians.json"), "--fixture", "two_pair_clusters_n6", "--cn", f("cn_model.json"),
         "--tpn", f("tpn_model.json"), "--shots", "300", "--seed", "5", "--mode", "cluster-inverse", "--out", f("report.csv")}};
    for (const auto &step : steps) {
        Result r = run_cli(step);
        ASSERT_EQ(r.code, 0) << step[0] << ": " << r.err;
    }
    for (const auto &name : kOutputs) {
        std::string ref = read_text_file((a / "out" / name).string());
        EXPECT_EQ(read_text_file((b / "out" / name).string()), ref) << name;
        EXPECT_EQ(read_text_file(f(name.c_str())), ref) << name;
    }
}

TEST(Cli, PipelineConfigErrors) {
    fs::path d = fresh_dir("badcfg");
    std::string cfg = (d / "c.json").string();
    write_text_file(cfg, R"({"num_qubits": 3})");
    EXPECT_EQ(run_cli({"pipeline", "--config", cfg}).code, 3);
    write_text_file(cfg, R"({"protocol": "qdot", "seeds": {}})");
    EXPECT_EQ(run_cli({"pipeline", "--config", cfg}).code, 3);
    EXPECT_EQ(run_cli({"pipeline", "--config", (d / "none.json").string()}).code, 4);
}
