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

#ifndef QDOTKIT_MARGINALS_H
#define QDOTKIT_MARGINALS_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qdotkit/circuits.h"
#include "qdotkit/povm.h"
#include "qdotkit/records.h"
#include "qdotkit/stochastic_matrix.h"

namespace qdk {

/// Estimated k-qubit reduced measurement on one subset.
///
/// `elements(x, y)` estimates tr(M^A_x rho_y) for outcome index x and input
/// setting index y. DDOT inputs are indexed by the 2^k basis bitstrings,
/// QDOT inputs by the 6^k symbol strings read in base 6 (first qubit most
/// significant). Columns whose setting never occurred are zero and flagged
/// uncovered.
struct MarginalEstimate {
    QubitSubset subset;
    RMatrix elements;
    /// Number of circuits realizing each input setting on the subset.
    std::vector<std::uint64_t> occurrences;
    /// Total shots behind each column.
    std::vector<std::uint64_t> shots;

    bool covered(std::size_t column) const { return occurrences[column] > 0; }
    bool fully_covered() const;
    std::vector<std::size_t> uncovered_columns() const;

    /// DDOT estimate as a noise matrix. Throws CoverageError if any column is
    /// uncovered or the table holds QDOT inputs.
    StochasticMatrix lambda() const;
};

struct MarginalTable {
    Protocol protocol = Protocol::kDdot;
    std::size_t k = 0;
    std::size_t num_qubits = 0;
    std::vector<MarginalEstimate> entries;

    /// Throws std::out_of_range if the subset was not estimated.
    const MarginalEstimate &at(const QubitSubset &subset) const;
};

inline constexpr double kMarginalWorkCap = 1e8;

/// Conditional-frequency estimator: for every subset A, element (x_A, y_A) is
/// the number of shots with outcome x_A on A among circuits preparing y_A on
/// A, divided by the total shots of those circuits. Subsets default to all
/// C(N, k). k is capped at 4 (DDOT) or 2 (QDOT); enumerating all subsets is
/// refused above kMarginalWorkCap elementary updates.
MarginalTable estimate_marginals(
    const ExperimentRecords &records, std::size_t k, const std::optional<std::vector<QubitSubset>> &subsets = {},
    std::size_t threads = 0);

/// Multi-shot form: each circuit contributes its own outcome frequencies
/// (counts / shots), which are then averaged over the circuits realizing
/// y_A. Equals estimate_marginals when every circuit has the same shots.
MarginalTable estimate_marginals_multishot(
    const ExperimentRecords &records, std::size_t k, const std::optional<std::vector<QubitSubset>> &subsets = {},
    std::size_t threads = 0);

/// Least-squares Choi estimate from QDOT matrix elements of a k-qubit
/// reduced measurement (2^k x 6^k):
///   J = 1/(3^k 2^k) sum_{x,y} m(x, y) |x><x| (x) (x)_j (3 rho_{y_j}^T - I).
/// Symmetrized to be exactly Hermitian.
CMatrix choi_from_matrix_elements(const RMatrix &elements, std::size_t k);

/// Least-squares Choi estimate for `subset` from QDOT records. Throws
/// CoverageError unless all 6^k settings occur on the subset.
CMatrix estimate_choi_ls(const ExperimentRecords &records, const QubitSubset &subset);

struct CptpOptions {
    double step_tol = 1e-9;
    double tp_tol = 1e-7;
    std::size_t max_iterations = 10000;
};

/// Projects a Hermitian Choi matrix of a channel with `dim` inputs and
/// `num_outcomes` outputs (output register first) onto the CPTP set using
/// Dykstra's alternating projections between the PSD cone and the affine set
/// tr_out J = I/dim. Throws ConvergenceError with residuals on failure.
CMatrix project_cptp(const CMatrix &choi, std::size_t num_outcomes, std::size_t dim, const CptpOptions &opts = {});

/// Diagonal POVM from a fully covered DDOT estimate.
Povm povm_from_marginal(const MarginalEstimate &entry);
/// POVM from a QDOT estimate: least-squares Choi, CPTP projection, then
/// effects M_x = d * (block x)^T, renormalized to sum exactly to I.
Povm povm_from_marginal(const MarginalEstimate &entry, Protocol protocol);

struct TvdBound {
    double epsilon_star = 0;
    double p_err = 0;
    std::uint64_t n_shots = 0;
    std::size_t dim = 0;
};

/// eps* = sqrt((log(2^dim - 2) - log p_err) / (2 n_shots)); with probability
/// at least 1 - p_err the empirical distribution of `dim` outcomes is within
/// eps* of the truth in TVD.
TvdBound tvd_confidence(std::uint64_t n_shots, std::size_t dim, double p_err);

/// eps* = sqrt((log(2^k (2^(2^k) - 2)) - log p_err) / (2 n_shots)) bounds the
/// worst-case distance between a k-qubit noise matrix and its estimate.
double noise_matrix_confidence(std::size_t k, std::uint64_t n_shots, double p_err);

}  // namespace qdk

#endif
