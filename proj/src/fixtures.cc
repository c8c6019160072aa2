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

#include "qdotkit/fixtures.h"

#include <stdexcept>

namespace qdk {

StochasticMatrix correlated_pair_noise(std::array<double, 2> flip_a, std::array<double, 2> flip_b, double joint) {
    RMatrix m = RMatrix::Zero(4, 4);
    for (std::size_t ya = 0; ya < 2; ++ya) {
        for (std::size_t yb = 0; yb < 2; ++yb) {
            std::size_t y = 2 * ya + yb;
            double pa = flip_a[yb];
            double pb = flip_b[ya];
            for (std::size_t fa = 0; fa < 2; ++fa) {
                for (std::size_t fb = 0; fb < 2; ++fb) {
                    double p = (1 - joint) * (fa ? pa : 1 - pa) * (fb ? pb : 1 - pb);
                    if (fa && fb) {
                        p += joint;
                    }
                    std::size_t x = 2 * (ya ^ fa) + (yb ^ fb);
                    m(x, y) += p;
                }
            }
        }
    }
    return StochasticMatrix(std::move(m));
}

namespace {

Cluster singleton(std::size_t q, std::size_t n, double p0, double p1) {
    return Cluster{QubitSubset({q}, n), QubitSubset({}, n), {StochasticMatrix::binary(p0, p1)}};
}

CnModel two_pair_clusters_n6() {
    const std::size_t n = 6;
    std::vector<Cluster> cl;
    cl.push_back(Cluster{
        QubitSubset({0, 1}, n), QubitSubset({}, n), {correlated_pair_noise({0.02, 0.20}, {0.03, 0.15}, 0.06)}});
    cl.push_back(Cluster{
        QubitSubset({2, 3}, n), QubitSubset({}, n), {correlated_pair_noise({0.04, 0.18}, {0.02, 0.16}, 0.08)}});
    cl.push_back(singleton(4, n, 0.02, 0.05));
    cl.push_back(singleton(5, n, 0.03, 0.07));
    return CnModel(n, std::move(cl));
}

CnModel neighbor_chain_n8() {
    const std::size_t n = 8;
    std::vector<Cluster> cl;
    cl.push_back(Cluster{
        QubitSubset({0, 1}, n),
        QubitSubset({2}, n),
        {correlated_pair_noise({0.02, 0.02}, {0.03, 0.10}, 0.0), correlated_pair_noise({0.17, 0.17}, {0.03, 0.10}, 0.0)}});
    cl.push_back(singleton(2, n, 0.02, 0.04));
    cl.push_back(singleton(3, n, 0.01, 0.05));
    cl.push_back(Cluster{
        QubitSubset({4, 5}, n), QubitSubset({}, n), {correlated_pair_noise({0.03, 0.12}, {0.02, 0.14}, 0.05)}});
    cl.push_back(singleton(6, n, 0.02, 0.06));
    cl.push_back(singleton(7, n, 0.015, 0.035));
    return CnModel(n, std::move(cl));
}

CnModel uncorrelated_n10() {
    std::vector<StochasticMatrix> m;
    for (std::size_t q = 0; q < 10; ++q) {
        m.push_back(StochasticMatrix::binary(0.01 + 0.004 * q, 0.03 + 0.006 * q));
    }
    return CnModel::tensor_product(m);
}

}  // namespace

CnModel planted_model_library(std::string_view name) {
    if (name == "identity_n6") {
        return CnModel::identity(6);
    }
    if (name == "uncorrelated_n10") {
        return uncorrelated_n10();
    }
    if (name == "two_pair_clusters_n6") {
        return two_pair_clusters_n6();
    }
    if (name == "neighbor_chain_n8") {
        return neighbor_chain_n8();
    }
    throw std::invalid_argument("unknown planted model '" + std::string(name) + "'");
}

std::vector<std::string> planted_model_names() {
    return {"identity_n6", "uncorrelated_n10", "two_pair_clusters_n6", "neighbor_chain_n8"};
}

Povm x_basis_povm() {
    CMatrix id = CMatrix::Identity(2, 2);
    return Povm({0.5 * (id + pauli_x()), 0.5 * (id - pauli_x())});
}

}  // namespace qdk
