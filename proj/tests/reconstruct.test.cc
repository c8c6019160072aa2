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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "qdotkit/circuits.h"
#include "qdotkit/distances.h"
#include "qdotkit/error.h"
#include "qdotkit/fixtures.h"
#include "qdotkit/marginals.h"
#include "qdotkit/reconstruct.h"
#include "qdotkit/simulator.h"

using namespace qdk;

namespace {

Partition make_partition(std::size_t n, std::vector<std::vector<std::size_t>> clusters) {
    Partition p{n, {}};
    for (auto &c : clusters) {
        p.clusters.push_back(QubitSubset(c, n));
    }
    p.canonicalize();
    return p;
}

// Marginal of the full noise matrix: uniform over inputs outside s, summed
// over outputs outside s.
RMatrix brute_force_marginal(const StochasticMatrix &global, const QubitSubset &s) {
    std::size_t ds = std::size_t{1} << s.size();
    std::size_t full = global.dim_in();
    RMatrix out = RMatrix::Zero(ds, ds);
    for (std::size_t y = 0; y < full; ++y) {
        for (std::size_t x = 0; x < full; ++x) {
            out(s.local_index_of_full(x), s.local_index_of_full(y)) += global(x, y);
        }
    }
    return out * (static_cast<double>(ds) / full);
}

}  // namespace

TEST(ReconstructCn, PlantedTwoPair) {
    CnModel truth = planted_model_library("two_pair_clusters_n6");
    auto r = sample_cn(truth, generate_collection(Protocol::kDdot, 6, 3000, 21), 10000, 22);
    CnModel m = reconstruct_cn(r, make_partition(6, {{0, 1}, {2, 3}, {4}, {5}}));
    ASSERT_EQ(m.clusters().size(), 4u);
    for (std::size_t c = 0; c < 4; ++c) {
        EXPECT_EQ(m.clusters()[c].qubits, truth.clusters()[c].qubits);
        EXPECT_LT((m.clusters()[c].noise[0].entries() - truth.clusters()[c].noise[0].entries()).cwiseAbs().maxCoeff(), 0.01);
    }
}

TEST(ReconstructCn, NeighborChain) {
    CnModel truth = planted_model_library("neighbor_chain_n8");
    auto r = sample_cn(truth, generate_collection(Protocol::kDdot, 8, 2000, 23), 5000, 24);
    Partition p = make_partition(8, {{0, 1}, {2}, {3}, {4, 5}, {6}, {7}});
    std::vector<QubitSubset> nbrs(p.clusters.size(), QubitSubset({}, 8));
    nbrs[0] = QubitSubset({2}, 8);
    CnModel m = reconstruct_cn(r, p, nbrs);
    const auto &got = m.clusters()[0].noise;
    const auto &want = truth.clusters()[0].noise;
    ASSERT_EQ(got.size(), 2u);
    for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_LT((got[j].entries() - want[j].entries()).cwiseAbs().maxCoeff(), 0.01);
    }
    EXPECT_NEAR(wc_distance_stochastic(got[0], got[1]), wc_distance_stochastic(want[0], want[1]), 0.02);
}

TEST(ReconstructCn, Errors) {
    auto r = sample_cn(CnModel::identity(3), generate_collection(Protocol::kDdot, 3, 20, 1), 10, 2);
    Partition p = make_partition(3, {{0, 1}, {2}});
    EXPECT_THROW(reconstruct_cn(r, p, std::nullopt, 100), CoverageError);
    std::vector<QubitSubset> wrong{QubitSubset({2}, 3)};
    EXPECT_THROW(reconstruct_cn(r, p, wrong, 1), std::invalid_argument);
    EXPECT_THROW(reconstruct_cn(r, make_partition(4, {{0, 1}, {2, 3}}), std::nullopt, 1), std::invalid_argument);
}

TEST(ReconstructTpn, MatchesSingleQubitMarginals) {
    auto r = sample_cn(planted_model_library("two_pair_clusters_n6"), generate_collection(Protocol::kDdot, 6, 500, 3), 50, 4);
    CnModel tpn = reconstruct_tpn(r);
    auto one = estimate_marginals(r, 1);
    for (std::size_t q = 0; q < 6; ++q) {
        const auto &c = tpn.clusters()[tpn.cluster_of(q)];
        EXPECT_EQ(c.qubits.size(), 1u);
        EXPECT_LT((c.noise[0].entries() - one.at(QubitSubset({q}, 6)).lambda().entries()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(SuggestNeighborhoods, NeighborChain) {
    CnModel truth = planted_model_library("neighbor_chain_n8");
    CorrelationMatrix c = model_correlations(truth, Metric::kWc);
    EXPECT_NEAR(c(2, 0), 0.15, 1e-12);
    Partition p = make_partition(8, {{0, 1}, {2}, {3}, {4, 5}, {6}, {7}});
    auto n = suggest_neighborhoods(c, p, 0.05, 2);
    ASSERT_EQ(n.size(), p.clusters.size());
    EXPECT_EQ(n[0], QubitSubset({2}, 8));
    for (std::size_t i = 1; i < n.size(); ++i) {
        EXPECT_EQ(n[i].size(), 0u);
    }
    EXPECT_EQ(suggest_neighborhoods(c, p, 0.05, 0)[0].size(), 0u);
    EXPECT_THROW(suggest_neighborhoods(c, p, 1.5, 2), std::invalid_argument);
}

TEST(MarginalNoise, MatchesBruteForceMarginalization) {
    for (const char *name : {"two_pair_clusters_n6", "neighbor_chain_n8"}) {
        CnModel m = planted_model_library(name);
        StochasticMatrix global = m.global_matrix();
        std::size_t n = m.num_qubits();
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            std::vector<std::size_t> q;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) {
                    q.push_back(i);
                }
            }
            if (q.size() > 3) {
                continue;
            }
            QubitSubset s(q, n);
            MarginalNoiseMatrix mn = marginal_noise(m, s);
            EXPECT_LT((mn.matrix.entries() - brute_force_marginal(global, s)).cwiseAbs().maxCoeff(), 1e-12)
                << name << " " << s.to_string();
        }
    }
}

TEST(MarginalNoise, Provenance) {
    CnModel chain = planted_model_library("neighbor_chain_n8");
    EXPECT_EQ(marginal_noise(chain, QubitSubset({4, 5}, 8)).provenance, Provenance::kWithinCluster);
    EXPECT_EQ(marginal_noise(chain, QubitSubset({3, 6}, 8)).provenance, Provenance::kCrossClusterProduct);
    EXPECT_EQ(marginal_noise(chain, QubitSubset({0, 1}, 8)).provenance, Provenance::kNeighborhoodAveraged);
    EXPECT_EQ(provenance_name(Provenance::kNeighborhoodAveraged), "neighborhood_averaged");
    EXPECT_THROW(marginal_noise(chain, QubitSubset({0, 1, 2, 3, 4}, 8)), std::invalid_argument);
}

TEST(MarginalNoise, PredictsSimulatorMarginals) {
    CnModel m = planted_model_library("two_pair_clusters_n6");
    const std::uint64_t shots = 100000;
    CircuitCollection c{Protocol::kDdot, 6, 0, {"011010"}};
    auto r = sample_cn(m, c, shots, 5);
    for (const auto &s : {QubitSubset({0, 1}, 6), QubitSubset({0, 1, 4}, 6), QubitSubset({2, 3, 5}, 6)}) {
        StochasticMatrix lam = marginal_noise(m, s).matrix;
        RVector empirical = RVector::Zero(static_cast<Eigen::Index>(lam.dim_out()));
        for (const auto &[bits, n] : r.records[0].counts) {
            empirical(static_cast<Eigen::Index>(s.local_index(bits))) += static_cast<double>(n) / shots;
        }
        // Unions of whole clusters without neighbors: exact for any setting.
        std::size_t y = s.local_index(r.records[0].setting);
        EXPECT_LT((empirical - lam.entries().col(static_cast<Eigen::Index>(y))).cwiseAbs().maxCoeff(), 5 / std::sqrt(shots));
    }
}

TEST(Mitigate, Examples) {
    MarginalNoiseMatrix lam{QubitSubset({0}, 1), StochasticMatrix::binary(0.1, 0.1), Provenance::kWithinCluster};
    RVector p(2);
    p << 0.82, 0.18;
    RVector q = mitigate_marginal(p, lam);
    EXPECT_NEAR(q(0), 0.9, 1e-12);
    EXPECT_NEAR(q(1), 0.1, 1e-12);
    p << 0.95, 0.05;
    RVector raw = mitigate_marginal(p, lam);
    EXPECT_LT(raw(1), 0.0);
    EXPECT_NEAR(raw.sum(), 1.0, 1e-12);
    RVector proj = mitigate_marginal(p, lam, true);
    EXPECT_NEAR(proj(0), 1.0, 1e-12);
    EXPECT_NEAR(proj(1), 0.0, 1e-12);
    MarginalNoiseMatrix singular{QubitSubset({0}, 1), StochasticMatrix::binary(0.5, 0.5), Provenance::kWithinCluster};
    EXPECT_THROW(mitigate_marginal(p, singular), std::invalid_argument);
}

TEST(SimplexProjection, Properties) {
    RVector v(3);
    v << 0.2, 0.3, 0.5;
    EXPECT_LT((simplex_projection(v) - v).cwiseAbs().maxCoeff(), 1e-15);
    v << 1.2, -0.1, -0.1;
    RVector p = simplex_projection(v);
    EXPECT_NEAR(p(0), 1.0, 1e-15);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int t = 0; t < 100; ++t) {
        RVector w(4);
        for (int i = 0; i < 4; ++i) {
            w(i) = g(rng);
        }
        RVector s = simplex_projection(w);
        EXPECT_NEAR(s.sum(), 1.0, 1e-12);
        EXPECT_GE(s.minCoeff(), 0.0);
    }
}

TEST(ModelCorrelations, PlantedPairs) {
    CorrelationMatrix c = model_correlations(planted_model_library("two_pair_clusters_n6"), Metric::kWc);
    EXPECT_NEAR(c(1, 0), 0.94 * 0.18, 1e-12);
    EXPECT_NEAR(c(0, 1), 0.94 * 0.12, 1e-12);
    EXPECT_NEAR(c(4, 5), 0.0, 1e-12);
}
