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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "qdotkit/clustering.h"
#include "qdotkit/fixtures.h"
#include "qdotkit/reconstruct.h"

using namespace qdk;

namespace qdk {
void PrintTo(const Partition &p, std::ostream *os) {
    for (const auto &c : p.clusters) {
        *os << c.to_string();
    }
}
}  // namespace qdk

namespace {

CorrelationMatrix make_corr(const RMatrix &v) {
    return CorrelationMatrix{static_cast<std::size_t>(v.rows()), Metric::kWc, CorrelationKind::kClassical, v};
}

CorrelationMatrix random_corr(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 0.3);
    RMatrix v = RMatrix::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                v(i, j) = u(rng);
            }
        }
    }
    return make_corr(v);
}

Partition make_partition(std::size_t n, std::vector<std::vector<std::size_t>> clusters) {
    Partition p{n, {}};
    for (auto &c : clusters) {
        p.clusters.push_back(QubitSubset::from_unsorted(c, n));
    }
    p.canonicalize();
    return p;
}

const Partition &planted_two_pair() {
    static const Partition p = make_partition(6, {{0, 1}, {2, 3}, {4}, {5}});
    return p;
}

CorrelationMatrix two_pair_corr() { return model_correlations(planted_model_library("two_pair_clusters_n6"), Metric::kWc); }

}  // namespace

TEST(PartitionType, ValidationAndCanonicalOrder) {
    Partition p{4, {QubitSubset({2, 3}, 4), QubitSubset({0, 1}, 4)}};
    p.canonicalize();
    EXPECT_EQ(p.clusters[0], QubitSubset({0, 1}, 4));
    EXPECT_EQ(p.size_weight(), 8u);
    EXPECT_EQ(Partition::singletons(3).size_weight(), 3u);
    Partition overlap{3, {QubitSubset({0, 1}, 3), QubitSubset({1, 2}, 3)}};
    EXPECT_THROW(overlap.validate(), std::invalid_argument);
    Partition gap{3, {QubitSubset({0, 1}, 3)}};
    EXPECT_THROW(gap.validate(), std::invalid_argument);
    EXPECT_TRUE(partition_less(make_partition(3, {{0, 1}, {2}}), make_partition(3, {{0, 2}, {1}})));
    EXPECT_FALSE(partition_less(make_partition(3, {{0, 2}, {1}}), make_partition(3, {{0, 1}, {2}})));
}

TEST(ClusteringConfigType, Validation) {
    EXPECT_NO_THROW(ClusteringConfig{}.validate());
    EXPECT_THROW((ClusteringConfig{0}).validate(), std::invalid_argument);
    EXPECT_THROW((ClusteringConfig{2, -0.1}).validate(), std::invalid_argument);
    EXPECT_THROW((ClusteringConfig{2, 0.0, 0}).validate(), std::invalid_argument);
}

TEST(CAvg, Examples) {
    EXPECT_NEAR(c_avg(make_corr(RMatrix::Constant(5, 5, 0.07)), 2), 0.07, 1e-15);
    RMatrix v = RMatrix::Constant(4, 4, 0.01);
    v.diagonal().setZero();
    v(0, 1) = 0.3;
    v(1, 0) = 0.2;
    v(2, 3) = 0.1;
    v(3, 2) = 0.1;
    EXPECT_NEAR(c_avg(make_corr(v), 2), 0.175, 1e-15);
    // c_max = 1 averages the N largest entries.
    EXPECT_NEAR(c_avg(make_corr(v), 1), 0.175, 1e-15);
    // All 12 off-diagonal entries when N (c_max - 1) exceeds them.
    EXPECT_NEAR(c_avg(make_corr(v), 9), (0.7 + 8 * 0.01) / 12, 1e-15);
    EXPECT_THROW(c_avg(make_corr(RMatrix::Zero(0, 0)), 2), std::invalid_argument);
}

TEST(CAvg, TopEntriesOracle) {
    std::mt19937_64 rng(3);
    CorrelationMatrix c = random_corr(6, rng);
    std::vector<double> off;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            if (i != j) {
                off.push_back(c(i, j));
            }
        }
    }
    std::sort(off.rbegin(), off.rend());
    EXPECT_NEAR(c_avg(c, 3), std::accumulate(off.begin(), off.begin() + 12, 0.0) / 12, 1e-15);
}

TEST(Objective, Examples) {
    RMatrix v = RMatrix::Zero(4, 4);
    v(0, 1) = v(1, 0) = 0.3;
    CorrelationMatrix c = make_corr(v);
    ClusteringConfig cfg;
    EXPECT_NEAR(objective(make_partition(4, {{0, 1}, {2}, {3}}), c, cfg), 0.6, 1e-15);
    EXPECT_EQ(objective(Partition::singletons(4), c, cfg), 0.0);
    cfg.alpha = 0.5;
    EXPECT_NEAR(objective(Partition::singletons(4), c, cfg), -c_avg(c, 2) * 0.5 * 4, 1e-15);
    EXPECT_EQ(objective(make_partition(4, {{0, 1, 2}, {3}}), c, cfg), -std::numeric_limits<double>::infinity());
}

TEST(ClusterQubits, PlantedRecoveryAcrossSeeds) {
    CorrelationMatrix c = two_pair_corr();
    for (double alpha : {0.0, 0.1}) {
        int single_run_hits = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            ClusteringConfig one{2, alpha, 1, seed};
            single_run_hits += cluster_qubits(c, one) == planted_two_pair();
            ClusteringConfig ten{2, alpha, 10, seed};
            EXPECT_EQ(cluster_qubits(c, ten), planted_two_pair()) << "seed " << seed;
        }
        EXPECT_GE(single_run_hits, 95);
    }
}

TEST(ClusterQubits, UncorrelatedGivesSingletons) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1e-3);
    RMatrix v = RMatrix::Zero(10, 10);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 10; ++j) {
            v(i, j) = i == j ? 0.0 : u(rng);
        }
    }
    // The penalty scales with c_avg, so only alpha >= max / c_avg rules out
    // every merge; the absolute size of the coefficients does not matter.
    EXPECT_EQ(cluster_qubits(make_corr(v), ClusteringConfig{2, 2.0}), Partition::singletons(10));
    EXPECT_NE(cluster_qubits(make_corr(v), ClusteringConfig{2, 0.1}), Partition::singletons(10));
}

TEST(ClusterQubits, CMaxOneGivesSingletons) {
    EXPECT_EQ(cluster_qubits(two_pair_corr(), ClusteringConfig{1}), Partition::singletons(6));
}

TEST(ClusterQubits, RespectsCMaxAndImprovesOnPairing) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        CorrelationMatrix c = random_corr(7, rng);
        for (std::size_t c_max : {2u, 3u}) {
            ClusteringConfig cfg{c_max, 0.2 * (t % 3), 3, static_cast<std::uint64_t>(t)};
            Partition p = cluster_qubits(c, cfg);
            EXPECT_NO_THROW(p.validate());
            for (const auto &cl : p.clusters) {
                EXPECT_LE(cl.size(), c_max);
            }
            EXPECT_GE(objective(p, c, cfg), objective(initial_pairing(c, cfg), c, cfg));
        }
    }
}

TEST(ClusterQubits, DeterministicAcrossThreads) {
    std::mt19937_64 rng(11);
    CorrelationMatrix c = random_corr(8, rng);
    ClusteringConfig cfg{3, 0.1, 8, 42, false, 1};
    Partition a = cluster_qubits(c, cfg);
    cfg.threads = 8;
    EXPECT_EQ(cluster_qubits(c, cfg), a);
    EXPECT_EQ(cluster_qubits(c, cfg), a);
    cfg.randomized_acceptance = true;
    Partition r = cluster_qubits(c, cfg);
    cfg.threads = 1;
    EXPECT_EQ(cluster_qubits(c, cfg), r);
}

TEST(ClusterQubits, PermutationEquivariance) {
    CorrelationMatrix c = two_pair_corr();
    std::vector<std::size_t> perm{0, 1, 2, 3, 4, 5};
    ClusteringConfig cfg{2, 0.1, 10, 3};
    do {
        RMatrix v(6, 6);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                v(perm[i], perm[j]) = c(i, j);
            }
        }
        Partition expected{6, {}};
        for (const auto &cl : planted_two_pair().clusters) {
            std::vector<std::size_t> q;
            for (auto x : cl.qubits()) {
                q.push_back(perm[x]);
            }
            expected.clusters.push_back(QubitSubset::from_unsorted(q, 6));
        }
        expected.canonicalize();
        ASSERT_EQ(cluster_qubits(make_corr(v), cfg), expected);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(InitialPairing, GreedyByPairSum) {
    RMatrix v = RMatrix::Zero(4, 4);
    v(0, 1) = 0.3;
    v(1, 2) = v(2, 1) = 0.2;
    v(2, 3) = 0.05;
    ClusteringConfig cfg;
    // {1,2} has the largest pair sum; {0,3} has zero gain and stays apart.
    EXPECT_EQ(initial_pairing(make_corr(v), cfg), make_partition(4, {{0}, {1, 2}, {3}}));
}

TEST(SelectAlpha, SingleAndTieBreaks) {
    CorrelationMatrix c = two_pair_corr();
    ClusteringConfig base{2, 0.0, 4, 1};
    auto constant = [](const Partition &) { return 1.0; };
    auto one = select_alpha_by_benchmark(c, {0.3}, base, constant);
    EXPECT_EQ(one.alpha, 0.3);
    // Both alphas give the planted partition and equal scores.
    auto tie = select_alpha_by_benchmark(c, {0.1, 0.0}, base, constant);
    EXPECT_EQ(tie.alpha, 0.0);
    EXPECT_EQ(tie.partition, planted_two_pair());
    EXPECT_EQ(tie.scanned.size(), 2u);
}

TEST(SelectAlpha, EqualScoresPreferFinerPartition) {
    RMatrix v = RMatrix::Zero(4, 4);
    v(0, 1) = v(1, 0) = 0.3;
    v(2, 3) = v(3, 2) = 0.01;
    // alpha = 0 pairs {2,3}; alpha = 1 keeps them apart.
    auto sel = select_alpha_by_benchmark(make_corr(v), {0.0, 1.0}, ClusteringConfig{}, [](const Partition &) { return 0.5; });
    EXPECT_EQ(sel.alpha, 1.0);
    EXPECT_EQ(sel.partition.size_weight(), 6u);
}

TEST(SelectAlpha, SkipsFailuresAndScoresPlantedPair) {
    CorrelationMatrix c = two_pair_corr();
    auto scorer = [](const Partition &p) {
        if (p.clusters.size() == 6) {
            throw std::runtime_error("no data");
        }
        // Penalize splitting the planted pairs.
        return p == planted_two_pair() ? 0.01 : 0.2;
    };
    auto sel = select_alpha_by_benchmark(c, {0.0, 0.1, 100.0}, ClusteringConfig{}, scorer);
    EXPECT_EQ(sel.partition, planted_two_pair());
    EXPECT_FALSE(sel.scanned[2].ok);
    EXPECT_FALSE(sel.scanned[2].error.empty());
    auto fail = [](const Partition &) -> double { throw std::runtime_error("boom"); };
    EXPECT_THROW(select_alpha_by_benchmark(c, {0.0}, ClusteringConfig{}, fail), std::runtime_error);
}
