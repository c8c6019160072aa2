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

#ifndef QDOTKIT_STOCHASTIC_MATRIX_H
#define QDOTKIT_STOCHASTIC_MATRIX_H

#include <cstddef>

#include "qdotkit/linalg.h"

namespace qdk {

/// Left-stochastic matrix: entry(x, y) is the probability of reading outcome x
/// when the ideal outcome (input) was y. Columns are inputs and sum to one.
class StochasticMatrix {
   public:
    StochasticMatrix() = default;
    /// Validates entries in [0, 1] and column sums within `kSumTol`.
    explicit StochasticMatrix(RMatrix entries);

    static StochasticMatrix identity(std::size_t dim);
    /// 2x2 matrix with P(1|0) = p_flip_0 and P(0|1) = p_flip_1.
    static StochasticMatrix binary(double p_flip_0, double p_flip_1);

    std::size_t dim_out() const { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t dim_in() const { return static_cast<std::size_t>(entries_.cols()); }
    double operator()(std::size_t x, std::size_t y) const { return entries_(x, y); }
    const RMatrix &entries() const { return entries_; }

    RVector apply(const RVector &p) const { return entries_ * p; }

   private:
    RMatrix entries_;
};

/// Tensor product; `a` acts on the more significant bits.
StochasticMatrix tensor(const StochasticMatrix &a, const StochasticMatrix &b);

}  // namespace qdk

#endif
