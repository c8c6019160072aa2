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

#ifndef QDOTKIT_CORRELATIONS_H
#define QDOTKIT_CORRELATIONS_H

#include <cstddef>
#include <string>

#include "qdotkit/marginals.h"
#include "qdotkit/povm.h"
#include "qdotkit/stochastic_matrix.h"

namespace qdk {

enum class Metric { kWc, kAc };
enum class CorrelationKind { kClassical, kQuantum };

std::string metric_name(Metric m);
Metric parse_metric(const std::string &name);
std::string kind_name(CorrelationKind k);
CorrelationKind parse_kind(const std::string &name);

/// Directed pairwise correlation coefficients; values(j, i) = c_{j->i}, the
/// largest change of qubit i's reduced statistics caused by qubit j's input.
struct CorrelationMatrix {
    std::size_t num_qubits = 0;
    Metric metric = Metric::kWc;
    CorrelationKind kind = CorrelationKind::kClassical;
    RMatrix values;
    /// Report threshold; coefficients below it are treated as noise.
    double threshold = 0.03;
    /// Statistical error attached to coefficients computed from estimates
    /// (zero for exact inputs).
    double noise_floor = 0;

    double operator()(std::size_t from, std::size_t to) const { return values(from, to); }
};

/// Effective 2x2 map on the target qubit of a two-qubit noise matrix when the
/// other qubit's input is `source_input`:
///   L(x_t, x_t') = sum_{x_s} Lambda(x_t x_s | x_t' source_input).
/// `target` is the position (0 = more significant) inside the pair.
StochasticMatrix conditional_map(const StochasticMatrix &lambda2, std::size_t target, std::size_t source_input);

/// c^WC_{source->target} = 1/2 ||L^{0} - L^{1}||_{1->1}.
double classical_corr_wc(const StochasticMatrix &lambda2, std::size_t target);
/// Average-case distance between the two conditional diagonal POVMs.
double classical_corr_ac(const StochasticMatrix &lambda2, std::size_t target);
/// Compact closed form 1/2 sqrt(1/2 ||D||_HS^2 + tr(D)^2) with D = L^0 - L^1.
/// Kept as a cross-check only: it disagrees with classical_corr_ac.
double classical_corr_ac_compact(const StochasticMatrix &lambda2, std::size_t target);

struct QuantumCorrOptions {
    std::size_t grid_points = 400;
    std::size_t refine_steps = 50;
    double tol = 1e-8;
};

/// Heuristic quantum coefficient c_{source->target} of a two-qubit POVM: the
/// largest distance between target reductions with the source prepared in
/// |n><n| versus |-n><-n|, searched over Bloch directions n on a Fibonacci
/// grid (always including the Z axis) followed by local refinement. A lower
/// bound on the true supremum.
double quantum_corr(const Povm &reduced2, std::size_t target, Metric metric, const QuantumCorrOptions &opts = {});

/// Classical coefficients for all ordered pairs from a k = 2 DDOT table.
/// noise_floor is the one-qubit noise-matrix confidence radius for the
/// smallest per-column sample: shots when the table covers only the pair,
/// otherwise circuits, since pooled complement settings dominate the error.
CorrelationMatrix classical_correlations(const MarginalTable &table, Metric metric, double p_err = 0.01);

/// Quantum coefficients for all ordered pairs from a k = 2 QDOT table.
CorrelationMatrix quantum_correlations(
    const MarginalTable &table, Metric metric, const QuantumCorrOptions &opts = {}, std::size_t threads = 0);

/// DOT graph with one directed edge j -> i per coefficient >= threshold.
std::string correlations_to_dot(const CorrelationMatrix &corr);

}  // namespace qdk

#endif
