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

#ifndef QDOTKIT_CLUSTERING_H
#define QDOTKIT_CLUSTERING_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qdotkit/correlations.h"
#include "qdotkit/qubit_subset.h"

namespace qdk {

/// Disjoint non-empty clusters covering [0, num_qubits). Canonical order:
/// clusters sorted by their smallest qubit.
struct Partition {
    std::size_t num_qubits = 0;
    std::vector<QubitSubset> clusters;

    void validate() const;
    /// Sorts clusters into canonical order and validates.
    Partition &canonicalize();
    /// Cluster sizes squared, summed. Smaller means finer.
    std::size_t size_weight() const;
    static Partition singletons(std::size_t num_qubits);
    bool operator==(const Partition &) const = default;
};

/// Lexicographic order on canonical partitions, comparing cluster qubit lists.
bool partition_less(const Partition &a, const Partition &b);

struct ClusteringConfig {
    std::size_t c_max = 2;
    double alpha = 0.0;
    std::size_t n_runs = 10;
    std::uint64_t seed = 0;
    /// Accept a uniformly random strictly-improving change instead of the best.
    bool randomized_acceptance = false;
    std::size_t threads = 0;

    void validate() const;
};

/// Mean of the N(c_max - 1) largest off-diagonal coefficients (the N largest
/// when c_max = 1).
double c_avg(const CorrelationMatrix &corr, std::size_t c_max);

/// Sum of within-cluster coefficients minus c_avg * alpha * sum |C|^2;
/// -infinity if some cluster exceeds c_max.
double objective(const Partition &p, const CorrelationMatrix &corr, const ClusteringConfig &config);

/// Greedy pairing by decreasing c_ij = c_{i->j} + c_{j->i}. A pair is formed
/// only when it raises the objective; the rest stay singletons.
Partition initial_pairing(const CorrelationMatrix &corr, const ClusteringConfig &config);

/// Randomized local search over moves and swaps, best of n_runs restarts.
Partition cluster_qubits(const CorrelationMatrix &corr, const ClusteringConfig &config);

struct AlphaScore {
    double alpha = 0;
    Partition partition;
    bool ok = false;
    double score = 0;
    std::string error;
};

struct AlphaSelection {
    double alpha = 0;
    Partition partition;
    double score = 0;
    std::vector<AlphaScore> scanned;
};

/// Clusters for every alpha, scores each partition (lower is better, e.g. the
/// median mitigated energy error) and picks the best. Ties go to the finer
/// partition, then the smaller alpha. Scorer exceptions skip that alpha.
AlphaSelection select_alpha_by_benchmark(
    const CorrelationMatrix &corr, const std::vector<double> &alphas, const ClusteringConfig &base,
    const std::function<double(const Partition &)> &scorer);

}  // namespace qdk

#endif
