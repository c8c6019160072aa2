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

#ifndef QDOTKIT_CLI_H
#define QDOTKIT_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qdk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitIo = 4;

/// Runs the command line (args excludes the program name). Errors go to err
/// as one JSON object: {"error": {"code", "type", "message"}}.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Subcommand cores. The pipeline calls the same functions, so its artifacts
// equal those of the individual commands.

struct GenCircuitsArgs {
    std::string protocol;
    std::size_t qubits = 0;
    std::size_t circuits = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string gate_lines;
};
void gen_circuits(const GenCircuitsArgs &a, std::ostream &log);

struct SimulateArgs {
    std::string circuits;
    std::string model;
    std::string fixture;
    std::string quantum_device;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::string out;
};
void simulate(const SimulateArgs &a, std::ostream &log);

struct EstimateArgs {
    std::string counts;
    std::size_t k = 2;
    bool multishot = false;
    std::string out;
};
void estimate(const EstimateArgs &a, std::ostream &log);

struct CorrelationsArgs {
    std::string marginals;
    std::string metric = "wc";
    std::string kind = "classical";
    double p_err = 0.01;
    double threshold = 0.03;
    std::string out;
    std::string dot;
};
void correlations(const CorrelationsArgs &a, std::ostream &log);

struct ClusterArgs {
    std::string corr;
    std::size_t c_max = 2;
    double alpha = 0.0;
    std::size_t runs = 10;
    std::uint64_t seed = 0;
    bool randomized = false;
    std::string out;
};
void cluster(const ClusterArgs &a, std::ostream &log);

struct ReconstructArgs {
    std::string counts;
    std::string partition;
    std::string corr;
    double neighbor_threshold = 0.05;
    std::size_t max_neighbors = 0;
    std::uint64_t min_count = 10;
    std::string out;
    std::string tpn_out;
};
void reconstruct(const ReconstructArgs &a, std::ostream &log);

struct GenHamiltoniansArgs {
    std::size_t instances = 0;
    std::size_t qubits = 0;
    std::uint64_t seed = 0;
    double density = 1.0;
    std::string out;
};
void gen_hamiltonians(const GenHamiltoniansArgs &a, std::ostream &log);

struct BenchmarkArgs {
    std::string hamiltonians;
    std::string device;
    std::string fixture;
    std::string cn;
    std::string tpn;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::string mode = "marginal";
    std::string out;
};
void benchmark(const BenchmarkArgs &a, std::ostream &log);

/// Runs every stage from a JSON config; relative paths resolve against the
/// config file's directory.
void pipeline(const std::string &config_path, std::ostream &log);

}  // namespace qdk::cli

#endif
