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

#ifndef QDOTKIT_LINALG_H
#define QDOTKIT_LINALG_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdk {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kSumTol = 1e-9;

/// Kronecker product a (x) b. The first factor occupies the most significant
/// part of the row/column index.
CMatrix kron(const CMatrix &a, const CMatrix &b);
RMatrix kron(const RMatrix &a, const RMatrix &b);

/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const CMatrix &m);

double max_abs_antihermitian(const CMatrix &m);
double min_eigenvalue(const CMatrix &hermitian);
double max_eigenvalue(const CMatrix &hermitian);

/// Operator (spectral) norm of a Hermitian matrix.
double operator_norm_hermitian(const CMatrix &hermitian);

/// Partial trace of a (d_a*d_b)-dimensional operator over the second factor.
CMatrix partial_trace_second(const CMatrix &m, std::size_t dim_a, std::size_t dim_b);
/// Partial trace over the first factor.
CMatrix partial_trace_first(const CMatrix &m, std::size_t dim_a, std::size_t dim_b);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

inline std::size_t pow2(std::size_t k) { return std::size_t{1} << k; }

}  // namespace qdk

#endif
