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

#ifndef QDOTKIT_COHERENCE_H
#define QDOTKIT_COHERENCE_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdotkit/povm.h"
#include "qdotkit/records.h"

namespace qdk {

/// Average-case distance between a POVM and its dephased (diagonal) part.
/// Only for dim <= 8.
double coherence_strength_ac(const Povm &m);

/// Hilbert-Schmidt norm of |p><p| - |q><q| for two setting strings over the
/// same qubits.
double witness_delta_norm(const std::string &p_setting, const std::string &q_setting);

struct CsBound {
    double bound = 0;
    double error = 0;
};

/// Lower bound TVD(Pr(p), Pr(q)) / (d ||delta||_HS) on the average-case
/// coherence strength from outcome distributions of two product states built
/// from X/Y eigenstates (symbols 2..5). Exact probabilities, so no error.
double cs_lower_bound_exact(
    const RVector &prob_p, const RVector &prob_q, const std::string &p_setting, const std::string &q_setting);

/// Same bound from empirical distributions, with the statistical error
/// (eps*_p + eps*_q) / d at failure probability p_err per distribution.
CsBound cs_lower_bound(
    const RVector &prob_p, std::uint64_t shots_p, const RVector &prob_q, std::uint64_t shots_q,
    const std::string &p_setting, const std::string &q_setting, double p_err);

struct CoherenceReport {
    QubitSubset subset;
    std::optional<double> cs_ac;
    double cs_lower_bound = 0;
    double bound_error = 0;
    std::string witness_p;
    std::string witness_q;
};

/// Witness pairs scanned on a k-qubit subset: states differing on one qubit
/// by |+> vs |-> or |+i> vs |-i>, every other qubit in one of the four X/Y
/// eigenstates.
std::vector<std::pair<std::string, std::string>> witness_pairs(std::size_t k);

/// Scans the witness pairs on `subset` using QDOT records (outcomes pooled
/// over all circuits preparing the pair's state on the subset) and reports
/// the largest bound. Pairs without data are skipped; throws CoverageError if
/// none has data.
CoherenceReport scan_coherence_bound(const ExperimentRecords &records, const QubitSubset &subset, double p_err);

/// Sum of block coherence strengths; an upper bound for the coherence
/// strength of their tensor product. Throws if a report lacks cs_ac.
double cs_tensor_upper_bound(const std::vector<CoherenceReport> &block_reports);

}  // namespace qdk

#endif
