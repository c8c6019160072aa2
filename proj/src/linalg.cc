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

#include "qdotkit/linalg.h"

#include <stdexcept>

namespace qdk {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

RMatrix kron(const RMatrix &a, const RMatrix &b) {
    RMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double hs_norm(const CMatrix &m) {
    return m.norm();
}

double max_abs_antihermitian(const CMatrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const CMatrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const CMatrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double operator_norm_hermitian(const CMatrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

CMatrix partial_trace_second(const CMatrix &m, std::size_t dim_a, std::size_t dim_b) {
    if (static_cast<std::size_t>(m.rows()) != dim_a * dim_b || m.rows() != m.cols()) {
        throw std::invalid_argument("partial_trace_second: dimension mismatch");
    }
    CMatrix out = CMatrix::Zero(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i) {
        for (std::size_t j = 0; j < dim_a; ++j) {
            cplx s = 0;
            for (std::size_t b = 0; b < dim_b; ++b) {
                s += m(i * dim_b + b, j * dim_b + b);
            }
            out(i, j) = s;
        }
    }
    return out;
}

CMatrix partial_trace_first(const CMatrix &m, std::size_t dim_a, std::size_t dim_b) {
    if (static_cast<std::size_t>(m.rows()) != dim_a * dim_b || m.rows() != m.cols()) {
        throw std::invalid_argument("partial_trace_first: dimension mismatch");
    }
    CMatrix out = CMatrix::Zero(dim_b, dim_b);
    for (std::size_t a = 0; a < dim_a; ++a) {
        out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
    }
    return out;
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace qdk
