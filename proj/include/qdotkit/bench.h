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

#ifndef QDOTKIT_BENCH_H
#define QDOTKIT_BENCH_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdotkit/cn_model.h"

namespace qdk {

/// E(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i with s_i = 1 - 2 bit_i.
struct Hamiltonian {
    std::size_t num_qubits = 0;
    std::map<std::size_t, double> h;
    std::map<std::pair<std::size_t, std::size_t>, double> j;

    void validate() const;
    double energy(std::string_view bits) const;
    /// Scales every coefficient by c.
    Hamiltonian scaled(double c) const;
    bool operator==(const Hamiltonian &) const = default;
};

struct HamiltonianOptions {
    /// Explicit coupling graph; when absent each pair is an edge with
    /// probability edge_density.
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> edges;
    double edge_density = 1.0;
};

/// Fields on every qubit and couplings on the graph's edges, each uniform in
/// [-1, 1]. Instance i uses its own substream of seed.
std::vector<Hamiltonian> random_hamiltonians(
    std::size_t n_instances, std::size_t num_qubits, std::uint64_t seed, const HamiltonianOptions &opts = {});

inline constexpr std::size_t kMaxExhaustiveQubits = 24;

struct GroundState {
    std::string bits;
    double energy = 0;
};

/// Exhaustive minimization; ties go to the smallest bitstring value.
GroundState ground_state(const Hamiltonian &h);

enum class MitigationMode {
    /// Invert the marginal noise of each term's own subset.
    kMarginal,
    /// Invert the noise of the clusters touching the term, then marginalize.
    kClusterInverse,
};

std::string mitigation_mode_name(MitigationMode m);
MitigationMode parse_mitigation_mode(const std::string &name);

/// Mean energy over the observed bitstrings, or with a mitigator the sum of
/// term expectations computed from mitigated marginal quasi-probabilities.
double energy_from_counts(
    const Hamiltonian &h, const std::map<std::string, std::uint64_t> &counts, const CnModel *mitigator = nullptr,
    MitigationMode mode = MitigationMode::kMarginal);

/// Same as energy_from_counts on an exact distribution over N-bit strings.
double energy_from_distribution(const Hamiltonian &h, const std::map<std::string, double> &probs);

/// Noisy expectation predicted by pushing the ideal string through each
/// term's marginal noise matrix. kClusterInverse propagates through the
/// clusters touching the term instead, which keeps intra-cluster input
/// dependence.
double predict_energy(
    const Hamiltonian &h, std::string_view ground, const CnModel &model, MitigationMode mode = MitigationMode::kMarginal);

struct BenchRow {
    std::string ground;
    double e_th = 0;
    double e_est = 0;
    double e_pred = 0;
    double e_mit_cn = 0;
    double e_mit_tpn = 0;
    double de_pred = 0;
    double de_est = 0;
    double de_mit_cn = 0;
    double de_mit_tpn = 0;
};

struct BenchReport {
    std::size_t num_qubits = 0;
    std::uint64_t shots = 0;
    std::vector<BenchRow> rows;
    double median_de_pred = 0;
    double median_de_est = 0;
    double median_de_mit_cn = 0;
    double median_de_mit_tpn = 0;
};

struct BenchModels {
    CnModel cn;
    CnModel tpn;
};

/// Prepares each ground string, samples it through the device and compares
/// raw, predicted and mitigated energies. Energy errors are divided by N.
BenchReport run_benchmark(
    const BenchModels &models, const std::vector<Hamiltonian> &hamiltonians, const CnModel &device,
    std::uint64_t shots, std::uint64_t seed, MitigationMode mode = MitigationMode::kMarginal, std::size_t threads = 0);

double median(std::vector<double> v);

/// CSV with one row per Hamiltonian and the medians as trailing '#' rows.
std::string report_to_csv(const BenchReport &report);

}  // namespace qdk

#endif
