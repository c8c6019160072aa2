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

#include "qdotkit/cn_model.h"

#include <stdexcept>
#include <string>

namespace qdk {

CnModel::CnModel(std::size_t num_qubits, std::vector<Cluster> clusters)
    : num_qubits_(num_qubits), clusters_(std::move(clusters)), cluster_of_(num_qubits, SIZE_MAX) {
    for (std::size_t c = 0; c < clusters_.size(); ++c) {
        const Cluster &cl = clusters_[c];
        if (cl.qubits.empty()) {
            throw std::invalid_argument("cluster " + std::to_string(c) + " is empty");
        }
        for (std::size_t q : cl.qubits.qubits()) {
            if (q >= num_qubits_) {
                throw std::invalid_argument("cluster qubit out of range");
            }
            if (cluster_of_[q] != SIZE_MAX) {
                throw std::invalid_argument("qubit " + std::to_string(q) + " belongs to two clusters");
            }
            cluster_of_[q] = c;
        }
        for (std::size_t q : cl.neighborhood.qubits()) {
            if (q >= num_qubits_) {
                throw std::invalid_argument("neighborhood qubit out of range");
            }
            if (cl.qubits.contains(q)) {
                throw std::invalid_argument(
                    "qubit " + std::to_string(q) + " is in the neighborhood of its own cluster");
            }
        }
        if (cl.noise.size() != pow2(cl.neighborhood.size())) {
            throw std::invalid_argument(
                "cluster " + cl.qubits.to_string() + " needs " + std::to_string(pow2(cl.neighborhood.size())) +
                " noise matrices");
        }
        std::size_t d = pow2(cl.qubits.size());
        for (const auto &m : cl.noise) {
            if (m.dim_in() != d || m.dim_out() != d) {
                throw std::invalid_argument("cluster " + cl.qubits.to_string() + " noise matrix has wrong size");
            }
        }
    }
    for (std::size_t q = 0; q < num_qubits_; ++q) {
        if (cluster_of_[q] == SIZE_MAX) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " is not in any cluster");
        }
    }
}

CnModel CnModel::tensor_product(const std::vector<StochasticMatrix> &per_qubit) {
    std::size_t n = per_qubit.size();
    std::vector<Cluster> clusters;
    for (std::size_t q = 0; q < n; ++q) {
        clusters.push_back(Cluster{QubitSubset({q}, n), QubitSubset({}, n), {per_qubit[q]}});
    }
    return CnModel(n, std::move(clusters));
}

CnModel CnModel::identity(std::size_t num_qubits) {
    return tensor_product(std::vector<StochasticMatrix>(num_qubits, StochasticMatrix::identity(2)));
}

bool CnModel::has_neighborhoods() const {
    for (const auto &c : clusters_) {
        if (!c.neighborhood.empty()) {
            return true;
        }
    }
    return false;
}

StochasticMatrix CnModel::global_matrix() const {
    if (num_qubits_ > 10) {
        throw std::invalid_argument("global_matrix: only materialized for N <= 10");
    }
    std::size_t d = pow2(num_qubits_);
    RMatrix g(d, d);
    for (std::size_t y = 0; y < d; ++y) {
        for (std::size_t x = 0; x < d; ++x) {
            double v = 1;
            for (const auto &cl : clusters_) {
                const auto &m = cl.noise[cl.neighborhood.local_index_of_full(y)];
                v *= m(cl.qubits.local_index_of_full(x), cl.qubits.local_index_of_full(y));
            }
            g(x, y) = v;
        }
    }
    return StochasticMatrix(std::move(g));
}

}  // namespace qdk
