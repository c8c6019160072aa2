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

#ifndef QDOTKIT_RECONSTRUCT_H
#define QDOTKIT_RECONSTRUCT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdotkit/clustering.h"
#include "qdotkit/cn_model.h"
#include "qdotkit/correlations.h"
#include "qdotkit/records.h"

namespace qdk {

/// Builds a CN model from DDOT records. neighborhoods, when given, is aligned
/// with partition.clusters. Every (cluster, y_N, y_C) cell needs at least
/// min_count matching circuits; otherwise CoverageError lists the gaps.
CnModel reconstruct_cn(
    const ExperimentRecords &records, const Partition &partition,
    const std::optional<std::vector<QubitSubset>> &neighborhoods = {}, std::uint64_t min_count = 10,
    std::size_t threads = 0);

/// For each cluster, up to n_max outside qubits j ranked by max_{i in C}
/// c_{j->i}, keeping only those above threshold.
std::vector<QubitSubset> suggest_neighborhoods(
    const CorrelationMatrix &corr, const Partition &partition, double threshold, std::size_t n_max);

enum class Provenance { kWithinCluster, kCrossClusterProduct, kNeighborhoodAveraged };
std::string provenance_name(Provenance p);

struct MarginalNoiseMatrix {
    QubitSubset subset;
    StochasticMatrix matrix;
    Provenance provenance = Provenance::kWithinCluster;
};

inline constexpr std::size_t kMaxMarginalNoiseQubits = 4;

/// Effective noise on subset s: each intersecting cluster is averaged
/// uniformly over neighbor inputs outside s, marginalized to its part of s
/// (uniform over the other inputs, summed over the other outputs), and the
/// per-cluster factors are multiplied entrywise in the qubit order of s.
MarginalNoiseMatrix marginal_noise(const CnModel &model, const QubitSubset &s);

inline constexpr double kMaxConditionNumber = 1e6;

/// Lambda^{-1} p by dense solve. The result sums to 1 but may have negative
/// entries; project_to_simplex maps it to the nearest probability vector.
RVector mitigate_marginal(const RVector &p_noisy, const MarginalNoiseMatrix &lam, bool project_to_simplex = false);

/// Euclidean projection onto the probability simplex.
RVector simplex_projection(const RVector &v);

/// Classical correlation coefficients implied by a model, from its 2-qubit
/// marginal noise matrices.
CorrelationMatrix model_correlations(const CnModel &model, Metric metric, std::size_t threads = 0);

/// Tensor-product model: reconstruct_cn with the all-singletons partition.
CnModel reconstruct_tpn(const ExperimentRecords &records, std::uint64_t min_count = 10, std::size_t threads = 0);

}  // namespace qdk

#endif
