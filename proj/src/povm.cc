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

#include "qdotkit/povm.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdk {

namespace {

bool is_power_of_two(std::size_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("density matrix must be square and non-empty");
    }
    if (max_abs_antihermitian(matrix_) > kHermitianTol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - cplx(1, 0)) > kHermitianTol) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    if (min_eigenvalue(matrix_) < -kPsdTol) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t index) {
    CMatrix m = CMatrix::Zero(dim, dim);
    m(index, index) = 1;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd &ket) {
    Eigen::VectorXcd v = ket / ket.norm();
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

Povm::Povm(std::vector<CMatrix> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) {
        throw std::invalid_argument("POVM needs at least one effect");
    }
    dim_ = static_cast<std::size_t>(effects_[0].rows());
    if (!is_power_of_two(dim_)) {
        throw std::invalid_argument("POVM dimension must be a power of two");
    }
    CMatrix total = CMatrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < effects_.size(); ++i) {
        const CMatrix &e = effects_[i];
        if (static_cast<std::size_t>(e.rows()) != dim_ || static_cast<std::size_t>(e.cols()) != dim_) {
            throw std::invalid_argument("POVM effect " + std::to_string(i) + " has wrong shape");
        }
        if (max_abs_antihermitian(e) > kHermitianTol) {
            throw std::invalid_argument("POVM effect " + std::to_string(i) + " is not Hermitian");
        }
        if (min_eigenvalue(e) < -kPsdTol) {
            throw std::invalid_argument("POVM effect " + std::to_string(i) + " is not positive semidefinite");
        }
        total += e;
    }
    if ((total - CMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > kSumTol) {
        throw std::invalid_argument("POVM effects do not sum to identity");
    }
}

Povm Povm::computational(std::size_t dim) {
    std::vector<CMatrix> eff;
    for (std::size_t i = 0; i < dim; ++i) {
        CMatrix e = CMatrix::Zero(dim, dim);
        e(i, i) = 1;
        eff.push_back(std::move(e));
    }
    return Povm(std::move(eff));
}

Povm Povm::from_stochastic(const StochasticMatrix &lambda) {
    if (lambda.dim_in() != lambda.dim_out()) {
        throw std::invalid_argument("diagonal POVM needs a square noise matrix");
    }
    std::size_t d = lambda.dim_in();
    std::vector<CMatrix> eff;
    for (std::size_t x = 0; x < d; ++x) {
        CMatrix e = CMatrix::Zero(d, d);
        for (std::size_t y = 0; y < d; ++y) {
            e(y, y) = lambda(x, y);
        }
        eff.push_back(std::move(e));
    }
    return Povm(std::move(eff));
}

Povm Povm::dephased() const {
    std::vector<CMatrix> eff;
    for (const auto &e : effects_) {
        CMatrix d = CMatrix::Zero(dim_, dim_);
        d.diagonal() = e.diagonal().real().cast<cplx>();
        eff.push_back(std::move(d));
    }
    return Povm(std::move(eff));
}

bool Povm::is_diagonal(double tol) const {
    for (const auto &e : effects_) {
        CMatrix off = e;
        off.diagonal().setZero();
        if (off.cwiseAbs().maxCoeff() > tol) {
            return false;
        }
    }
    return true;
}

Povm tensor(const Povm &a, const Povm &b) {
    std::vector<CMatrix> eff;
    eff.reserve(a.num_outcomes() * b.num_outcomes());
    for (const auto &ea : a.effects()) {
        for (const auto &eb : b.effects()) {
            eff.push_back(kron(ea, eb));
        }
    }
    return Povm(std::move(eff));
}

RVector born_probabilities(const Povm &m, const DensityMatrix &rho) {
    if (m.dim() != rho.dim()) {
        throw std::invalid_argument("born_probabilities: dimension mismatch");
    }
    RVector p(m.num_outcomes());
    double total = 0;
    for (std::size_t i = 0; i < m.num_outcomes(); ++i) {
        double v = (m.effect(i) * rho.matrix()).trace().real();
        if (v < -kPsdTol) {
            throw std::invalid_argument("born_probabilities: negative probability " + std::to_string(v));
        }
        v = std::clamp(v, 0.0, 1.0);
        p(i) = v;
        total += v;
    }
    return p / total;
}

Povm reduce_povm(const Povm &m, const QubitSubset &subset, const std::optional<DensityMatrix> &complement_state) {
    std::size_t n = subset.total_qubits();
    if (m.dim() != pow2(n) || m.num_outcomes() != m.dim()) {
        throw std::invalid_argument(
            "reduce_povm: POVM must act on " + std::to_string(n) + " qubits with one outcome per bitstring");
    }
    QubitSubset comp = subset.complement();
    std::size_t k = subset.size();
    std::size_t da = pow2(k);
    std::size_t dc = pow2(n - k);
    CMatrix sigma = complement_state ? complement_state->matrix() : CMatrix(CMatrix::Identity(dc, dc) / double(dc));
    if (static_cast<std::size_t>(sigma.rows()) != dc) {
        throw std::invalid_argument("reduce_povm: complement state has wrong dimension");
    }

    // full[a][c]: full-register index whose subset bits read a and complement bits read c.
    std::vector<std::vector<std::size_t>> full(da, std::vector<std::size_t>(dc));
    for (std::size_t idx = 0; idx < m.dim(); ++idx) {
        full[subset.local_index_of_full(idx)][comp.local_index_of_full(idx)] = idx;
    }

    std::vector<CMatrix> out(da, CMatrix::Zero(da, da));
    for (std::size_t x = 0; x < m.num_outcomes(); ++x) {
        const CMatrix &e = m.effect(x);
        CMatrix &target = out[subset.local_index_of_full(x)];
        for (std::size_t r = 0; r < da; ++r) {
            for (std::size_t c = 0; c < da; ++c) {
                cplx s = 0;
                for (std::size_t i = 0; i < dc; ++i) {
                    for (std::size_t j = 0; j < dc; ++j) {
                        if (sigma(j, i) != cplx(0)) {
                            s += e(full[r][i], full[c][j]) * sigma(j, i);
                        }
                    }
                }
                target(r, c) += s;
            }
        }
    }
    return Povm(std::move(out));
}

CMatrix measurement_choi(const Povm &m) {
    std::size_t d = m.dim();
    std::size_t k = m.num_outcomes();
    CMatrix j = CMatrix::Zero(k * d, k * d);
    for (std::size_t i = 0; i < k; ++i) {
        j.block(i * d, i * d, d, d) = m.effect(i).transpose() / static_cast<double>(d);
    }
    return j;
}

std::vector<CMatrix> effects_from_choi(const CMatrix &choi, std::size_t num_outcomes, std::size_t dim) {
    if (static_cast<std::size_t>(choi.rows()) != num_outcomes * dim) {
        throw std::invalid_argument("effects_from_choi: dimension mismatch");
    }
    std::vector<CMatrix> eff;
    for (std::size_t i = 0; i < num_outcomes; ++i) {
        eff.push_back(choi.block(i * dim, i * dim, dim, dim).transpose() * static_cast<double>(dim));
    }
    return eff;
}

}  // namespace qdk
