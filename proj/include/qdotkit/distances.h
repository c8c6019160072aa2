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

#ifndef QDOTKIT_DISTANCES_H
#define QDOTKIT_DISTANCES_H

#include <cstddef>
#include <span>
#include <vector>

#include "qdotkit/povm.h"
#include "qdotkit/stochastic_matrix.h"

namespace qdk {

/// Total variation distance 1/2 sum_i |p_i - q_i| between two probability
/// vectors. Both inputs must be normalized within 1e-6.
double tvd(std::span<const double> p, std::span<const double> q);
double tvd(const RVector &p, const RVector &q);

inline constexpr std::size_t kDefaultWcOutcomeCap = 8;

struct WorstCaseResult {
    double value = 0;
    /// Outcome subset (bit i set = outcome i included) attaining the maximum.
    std::size_t subset_mask = 0;
    /// Pure state maximizing the statistics difference.
    Eigen::VectorXcd witness;
};

/// Worst-case (operational) distance sup_rho TVD(p(M, rho), p(N, rho)),
/// evaluated exactly as the maximum over outcome subsets S of the largest
/// eigenvalue of sum_{i in S} (M_i - N_i). Refuses POVMs with more than
/// `outcome_cap` outcomes.
double wc_distance(const Povm &m, const Povm &n, std::size_t outcome_cap = kDefaultWcOutcomeCap);
WorstCaseResult wc_distance_detailed(const Povm &m, const Povm &n, std::size_t outcome_cap = kDefaultWcOutcomeCap);

/// 1/2 max_y sum_x |a(x,y) - b(x,y)|.
double wc_distance_stochastic(const StochasticMatrix &a, const StochasticMatrix &b);

/// Average-case distance (1/2d) sum_i sqrt(||M_i - N_i||_HS^2 + tr^2(M_i - N_i)).
double ac_distance(const Povm &m, const Povm &n);

}  // namespace qdk

#endif
