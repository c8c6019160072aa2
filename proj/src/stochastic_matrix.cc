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

#include "qdotkit/stochastic_matrix.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdk {

StochasticMatrix::StochasticMatrix(RMatrix entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) {
        throw std::invalid_argument("stochastic matrix must be non-empty");
    }
    for (Eigen::Index y = 0; y < entries_.cols(); ++y) {
        double s = 0;
        for (Eigen::Index x = 0; x < entries_.rows(); ++x) {
            double v = entries_(x, y);
            if (!(v >= -kSumTol && v <= 1 + kSumTol)) {
                throw std::invalid_argument(
                    "stochastic matrix entry (" + std::to_string(x) + "," + std::to_string(y) + ") = " +
                    std::to_string(v) + " outside [0,1]");
            }
            s += v;
        }
        if (std::abs(s - 1) > kSumTol) {
            throw std::invalid_argument(
                "stochastic matrix column " + std::to_string(y) + " sums to " + std::to_string(s));
        }
    }
}

StochasticMatrix StochasticMatrix::identity(std::size_t dim) {
    return StochasticMatrix(RMatrix::Identity(dim, dim));
}

StochasticMatrix StochasticMatrix::binary(double p_flip_0, double p_flip_1) {
    RMatrix m(2, 2);
    m << 1 - p_flip_0, p_flip_1, p_flip_0, 1 - p_flip_1;
    return StochasticMatrix(std::move(m));
}

StochasticMatrix tensor(const StochasticMatrix &a, const StochasticMatrix &b) {
    return StochasticMatrix(kron(a.entries(), b.entries()));
}

}  // namespace qdk
