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

#include "qdotkit/distances.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdk {

namespace {

void check_distribution(std::span<const double> p, const char *name) {
    double s = 0;
    for (double v : p) {
        s += v;
    }
    if (std::abs(s - 1) > 1e-6) {
        throw std::invalid_argument(std::string("tvd: ") + name + " is not normalized (sum " + std::to_string(s) + ")");
    }
}

void check_same_shape(const Povm &m, const Povm &n) {
    if (m.dim() != n.dim() || m.num_outcomes() != n.num_outcomes()) {
        throw std::invalid_argument("POVM shapes differ");
    }
}

}  // namespace

double tvd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("tvd: length mismatch");
    }
    check_distribution(p, "p");
    check_distribution(q, "q");
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += std::abs(p[i] - q[i]);
    }
    return s / 2;
}

double tvd(const RVector &p, const RVector &q) {
    return tvd(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())),
               std::span<const double>(q.data(), static_cast<std::size_t>(q.size())));
}

WorstCaseResult wc_distance_detailed(const Povm &m, const Povm &n, std::size_t outcome_cap) {
    check_same_shape(m, n);
    std::size_t k = m.num_outcomes();
    if (k > outcome_cap) {
        throw std::invalid_argument(
            "exponential subset enumeration exceeded: " + std::to_string(k) + " outcomes > cap " +
            std::to_string(outcome_cap));
    }
    std::vector<CMatrix> diff(k);
    for (std::size_t i = 0; i < k; ++i) {
        diff[i] = m.effect(i) - n.effect(i);
    }
    WorstCaseResult best;
    best.witness = Eigen::VectorXcd::Zero(m.dim());
    best.witness(0) = 1;
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        CMatrix acc = CMatrix::Zero(m.dim(), m.dim());
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (std::size_t{1} << i)) {
                acc += diff[i];
            }
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> es(acc);
        Eigen::Index top = m.dim() - 1;
        double lam = es.eigenvalues()(top);
        if (lam > best.value) {
            best.value = lam;
            best.subset_mask = mask;
            best.witness = es.eigenvectors().col(top);
        }
    }
    return best;
}

double wc_distance(const Povm &m, const Povm &n, std::size_t outcome_cap) {
    return wc_distance_detailed(m, n, outcome_cap).value;
}

double wc_distance_stochastic(const StochasticMatrix &a, const StochasticMatrix &b) {
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
        throw std::invalid_argument("wc_distance_stochastic: shape mismatch");
    }
    return (a.entries() - b.entries()).cwiseAbs().colwise().sum().maxCoeff() / 2;
}

double ac_distance(const Povm &m, const Povm &n) {
    check_same_shape(m, n);
    double s = 0;
    for (std::size_t i = 0; i < m.num_outcomes(); ++i) {
        CMatrix d = m.effect(i) - n.effect(i);
        double hs2 = d.squaredNorm();
        double tr = d.trace().real();
        s += std::sqrt(hs2 + tr * tr);
    }
    return s / (2.0 * static_cast<double>(m.dim()));
}

}  // namespace qdk
