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

#ifndef QDOTKIT_CN_MODEL_H
#define QDOTKIT_CN_MODEL_H

#include <cstddef>
#include <string_view>
#include <vector>

#include "qdotkit/qubit_subset.h"
#include "qdotkit/stochastic_matrix.h"

namespace qdk {

/// One cluster of a clusters-and-neighbors readout noise model. The noise
/// acting on `qubits` depends on the input state of `neighborhood`;
/// noise[j] is the matrix used when the neighborhood setting, read as a
/// bitstring over the neighborhood qubits in increasing order, equals j.
struct Cluster {
    QubitSubset qubits;
    QubitSubset neighborhood;
    std::vector<StochasticMatrix> noise;

    /// Noise matrix selected by the neighborhood bits of a full DDOT setting.
    const StochasticMatrix &matrix_for(std::string_view setting) const {
        return noise[neighborhood.local_index(setting)];
    }
};

/// Clusters-and-neighbors (CN) stochastic readout noise model:
///   Lambda_{x|y} = prod_c Lambda_c^{y_{N_c}}(x_{C_c} | y_{C_c}).
class CnModel {
   public:
    CnModel() = default;
    /// Throws std::invalid_argument unless clusters are disjoint and cover
    /// [0, N), neighborhoods avoid their own cluster, and every cluster has
    /// 2^|N| square matrices of size 2^|C|.
    CnModel(std::size_t num_qubits, std::vector<Cluster> clusters);

    /// Tensor-product noise: one singleton cluster per qubit.
    static CnModel tensor_product(const std::vector<StochasticMatrix> &per_qubit);
    static CnModel identity(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Cluster> &clusters() const { return clusters_; }
    /// Index of the cluster containing `qubit`.
    std::size_t cluster_of(std::size_t qubit) const { return cluster_of_[qubit]; }
    bool has_neighborhoods() const;

    /// Full 2^N x 2^N noise matrix. Only for N <= 10.
    StochasticMatrix global_matrix() const;

   private:
    std::size_t num_qubits_ = 0;
    std::vector<Cluster> clusters_;
    std::vector<std::size_t> cluster_of_;
};

}  // namespace qdk

#endif
