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

#ifndef QDOTKIT_POVM_H
#define QDOTKIT_POVM_H

#include <cstddef>
#include <optional>
#include <vector>

#include "qdotkit/linalg.h"
#include "qdotkit/qubit_subset.h"
#include "qdotkit/stochastic_matrix.h"

namespace qdk {

/// Density matrix of a quantum state: Hermitian, PSD, unit trace.
class DensityMatrix {
   public:
    DensityMatrix() = default;
    explicit DensityMatrix(CMatrix matrix);

    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix basis_state(std::size_t dim, std::size_t index);
    static DensityMatrix pure(const Eigen::VectorXcd &ket);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const CMatrix &matrix() const { return matrix_; }

   private:
    CMatrix matrix_;
};

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// A quantum measurement: PSD effects summing to the identity.
///
/// For multi-qubit POVMs whose outcomes are bitstrings, outcome index x is read
/// with qubit 0 as the most significant bit.
class Povm {
   public:
    Povm() = default;
    /// Validates the Hermiticity, positivity and completeness invariants.
    explicit Povm(std::vector<CMatrix> effects);

    /// Ideal computational-basis projective measurement.
    static Povm computational(std::size_t dim);
    /// Diagonal POVM M_x = sum_y lambda(x, y) |y><y|.
    static Povm from_stochastic(const StochasticMatrix &lambda);

    std::size_t dim() const { return dim_; }
    std::size_t num_outcomes() const { return effects_.size(); }
    const std::vector<CMatrix> &effects() const { return effects_; }
    const CMatrix &effect(std::size_t i) const { return effects_[i]; }

    /// Effects with all off-diagonal entries removed.
    Povm dephased() const;
    bool is_diagonal(double tol = 1e-12) const;

   private:
    std::size_t dim_ = 0;
    std::vector<CMatrix> effects_;
};

/// Tensor product; outcome index of `a` is the more significant part.
Povm tensor(const Povm &a, const Povm &b);

/// Outcome distribution tr(M_x rho). Tiny negatives (>= -1e-9) are clamped
/// and the vector renormalized; larger negatives throw.
RVector born_probabilities(const Povm &m, const DensityMatrix &rho);

/// Reduced POVM on `subset`: effects sum_{x_c} tr_c[M_{x_a x_c} (I (x) sigma)].
/// `m` must act on subset.total_qubits() qubits with one outcome per
/// bitstring. The complement state defaults to the maximally mixed state.
Povm reduce_povm(const Povm &m, const QubitSubset &subset, const std::optional<DensityMatrix> &complement_state = {});

/// Choi matrix (1/d) sum_i |i><i| (x) M_i^T of the measurement channel; the
/// outcome register is the first tensor factor.
CMatrix measurement_choi(const Povm &m);

/// Inverse of measurement_choi's layout: effects M_i = d * (block i)^T. No
/// validation is applied to the extracted effects.
std::vector<CMatrix> effects_from_choi(const CMatrix &choi, std::size_t num_outcomes, std::size_t dim);

}  // namespace qdk

#endif
