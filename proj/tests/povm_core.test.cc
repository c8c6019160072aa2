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

#include "qdotkit/distances.h"
#include "qdotkit/povm.h"
#include "test_util.h"

using namespace qdk;
using qdk::testing::haar_ket;
using qdk::testing::random_povm;
using qdk::testing::random_pure;
using qdk::testing::random_stochastic;

namespace {

CMatrix diag2(double a, double b) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Povm swapped_computational() { return Povm({diag2(0, 1), diag2(1, 0)}); }

// Reduction oracle for subset = leading qubits: explicit index loops.
Povm reduce_leading(const Povm &m, std::size_t k, const CMatrix &sigma) {
    std::size_t da = pow2(k);
    std::size_t db = m.dim() / da;
    std::vector<CMatrix> out(da, CMatrix::Zero(da, da));
    for (std::size_t x = 0; x < m.num_outcomes(); ++x) {
        std::size_t xa = x / db;
        for (std::size_t i = 0; i < da; ++i) {
            for (std::size_t j = 0; j < da; ++j) {
                cplx s = 0;
                for (std::size_t b1 = 0; b1 < db; ++b1) {
                    for (std::size_t b2 = 0; b2 < db; ++b2) {
                        s += m.effect(x)(i * db + b1, j * db + b2) * sigma(b2, b1);
                    }
                }
                out[xa](i, j) += s;
            }
        }
    }
    return Povm(out);
}

double max_effect_diff(const Povm &a, const Povm &b) {
    double d = 0;
    for (std::size_t i = 0; i < a.num_outcomes(); ++i) {
        d = std::max(d, (a.effect(i) - b.effect(i)).cwiseAbs().maxCoeff());
    }
    return d;
}

}  // namespace

TEST(Tvd, Examples) {
    EXPECT_DOUBLE_EQ(tvd(RVector::Unit(2, 0), RVector::Unit(2, 1)), 1.0);
    RVector p(3);
    p << 0.2, 0.3, 0.5;
    EXPECT_DOUBLE_EQ(tvd(p, p), 0.0);
    RVector a(2), b(2);
    a << 0.7, 0.3;
    b << 0.5, 0.5;
    EXPECT_NEAR(tvd(a, b), 0.2, 1e-15);
}

TEST(Tvd, Errors) {
    RVector a(2), b(3);
    a << 0.5, 0.5;
    b << 0.2, 0.3, 0.5;
    EXPECT_THROW(tvd(a, b), std::invalid_argument);
    RVector c(2);
    c << 0.5, 0.6;
    EXPECT_THROW(tvd(a, c), std::invalid_argument);
}

TEST(Povm, RejectsInvalidEffects) {
    CMatrix nonherm = diag2(0.5, 0.5);
    nonherm(0, 1) = 0.1;
    EXPECT_THROW(Povm({nonherm, CMatrix::Identity(2, 2) - nonherm}), std::invalid_argument);
    EXPECT_THROW(Povm({diag2(1.2, 0), diag2(-0.2, 1)}), std::invalid_argument);
    EXPECT_THROW(Povm({diag2(0.5, 0), diag2(0.4, 1)}), std::invalid_argument);
    CMatrix three = CMatrix::Identity(3, 3);
    EXPECT_THROW(Povm({three}), std::invalid_argument);
}

TEST(StochasticMatrix, RejectsInvalid) {
    RMatrix m(2, 2);
    m << 0.9, 0.2, 0.2, 0.8;
    EXPECT_THROW(StochasticMatrix{m}, std::invalid_argument);
    m << 1.1, 0, -0.1, 1;
    EXPECT_THROW(StochasticMatrix{m}, std::invalid_argument);
    m << 0.9, 0.2, 0.1, 0.8;
    EXPECT_NO_THROW(StochasticMatrix{m});
}

TEST(DensityMatrix, RejectsInvalid) {
    EXPECT_THROW(DensityMatrix(diag2(0.6, 0.6)), std::invalid_argument);
    EXPECT_THROW(DensityMatrix(diag2(1.2, -0.2)), std::invalid_argument);
    EXPECT_NO_THROW(DensityMatrix(diag2(0.25, 0.75)));
}

TEST(Born, Examples) {
    RVector p = born_probabilities(Povm::computational(2), DensityMatrix::basis_state(2, 0));
    EXPECT_DOUBLE_EQ(p(0), 1.0);
    EXPECT_DOUBLE_EQ(p(1), 0.0);

    CMatrix plus = 0.5 * (CMatrix::Identity(2, 2) + pauli_x());
    Povm xb({plus, CMatrix::Identity(2, 2) - plus});
    RVector q = born_probabilities(xb, DensityMatrix::maximally_mixed(2));
    EXPECT_NEAR(q(0), 0.5, 1e-15);
    EXPECT_NEAR(q(1), 0.5, 1e-15);

    std::mt19937_64 rng(3);
    StochasticMatrix lam = random_stochastic(4, 4, rng);
    Povm d = Povm::from_stochastic(lam);
    for (std::size_t y = 0; y < 4; ++y) {
        RVector col = born_probabilities(d, DensityMatrix::basis_state(4, y));
        EXPECT_LT((col - lam.entries().col(y)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Born, DimensionMismatch) {
    EXPECT_THROW(born_probabilities(Povm::computational(2), DensityMatrix::maximally_mixed(4)), std::invalid_argument);
}

TEST(ReducePovm, ProductFactorizes) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        Povm a = random_povm(2, 2, rng);
        Povm b = random_povm(2, 2, rng);
        Povm ab = tensor(a, b);
        EXPECT_LT(max_effect_diff(reduce_povm(ab, QubitSubset({0}, 2)), a), 1e-12);
        EXPECT_LT(max_effect_diff(reduce_povm(ab, QubitSubset({1}, 2)), b), 1e-12);
    }
}

TEST(ReducePovm, ComputationalStaysComputational) {
    Povm p = Povm::computational(4);
    EXPECT_LT(max_effect_diff(reduce_povm(p, QubitSubset({0}, 2)), Povm::computational(2)), 1e-15);
    EXPECT_LT(max_effect_diff(reduce_povm(p, QubitSubset({1}, 2)), Povm::computational(2)), 1e-15);
}

TEST(ReducePovm, ConditionalColumnsOfPlantedMatrix) {
    // Qubit A = 0 flips with 0.01 when B's input is 0 and 0.2 when it is 1.
    RMatrix lam = RMatrix::Zero(4, 4);
    for (std::size_t ya = 0; ya < 2; ++ya) {
        for (std::size_t yb = 0; yb < 2; ++yb) {
            double f = yb == 0 ? 0.01 : 0.2;
            std::size_t y = 2 * ya + yb;
            lam(2 * ya + yb, y) = 1 - f;
            lam(2 * (1 - ya) + yb, y) = f;
        }
    }
    Povm m = Povm::from_stochastic(StochasticMatrix(lam));
    for (std::size_t yb = 0; yb < 2; ++yb) {
        Povm r = reduce_povm(m, QubitSubset({0}, 2), DensityMatrix::basis_state(2, yb));
        double f = yb == 0 ? 0.01 : 0.2;
        EXPECT_NEAR(r.effect(0)(0, 0).real(), 1 - f, 1e-15);
        EXPECT_NEAR(r.effect(0)(1, 1).real(), f, 1e-15);
        EXPECT_NEAR(r.effect(1)(0, 0).real(), f, 1e-15);
    }
}

TEST(ReducePovm, MatchesIndexLoopOracle) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10; ++t) {
        Povm m = random_povm(8, 8, rng);
        DensityMatrix sigma = random_pure(2, rng);
        Povm lib = reduce_povm(m, QubitSubset({0, 1}, 3), sigma);
        EXPECT_LT(max_effect_diff(lib, reduce_leading(m, 2, sigma.matrix())), 1e-12);
    }
}

TEST(ReducePovm, TwoStepEqualsOneStep) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        Povm m = random_povm(8, 8, rng);
        Povm step = reduce_povm(reduce_povm(m, QubitSubset({0, 2}, 3)), QubitSubset({1}, 2));
        Povm direct = reduce_povm(m, QubitSubset({2}, 3));
        EXPECT_LT(max_effect_diff(step, direct), 1e-12);
    }
}

TEST(ReducePovm, Errors) {
    Povm m = Povm::computational(4);
    EXPECT_THROW(reduce_povm(m, QubitSubset({0}, 3)), std::invalid_argument);
    EXPECT_THROW(reduce_povm(m, QubitSubset({0}, 2), DensityMatrix::maximally_mixed(4)), std::invalid_argument);
}

TEST(WcDistance, Examples) {
    Povm p = Povm::computational(2);
    EXPECT_DOUBLE_EQ(wc_distance(p, p), 0.0);
    EXPECT_NEAR(wc_distance(p, swapped_computational()), 1.0, 1e-12);
    RMatrix f(2, 2);
    f << 0.9, 0.1, 0.1, 0.9;
    EXPECT_NEAR(wc_distance(Povm::from_stochastic(StochasticMatrix(f)), p), 0.1, 1e-12);
}

TEST(WcDistance, OutcomeCap) {
    Povm p = Povm::computational(16);
    try {
        wc_distance(p, p);
        FAIL() << "expected refusal";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("exponential subset enumeration exceeded"), std::string::npos);
    }
    EXPECT_NO_THROW(wc_distance(p, p, 16));
}

TEST(WcDistance, BoundsEveryStateAndWitnessAttains) {
    std::mt19937_64 rng(13);
    for (std::size_t d : {2u, 4u}) {
        Povm m = random_povm(d, d, rng);
        Povm n = random_povm(d, d, rng);
        WorstCaseResult wc = wc_distance_detailed(m, n);
        for (int t = 0; t < 5000; ++t) {
            DensityMatrix rho = random_pure(d, rng);
            EXPECT_LE(tvd(born_probabilities(m, rho), born_probabilities(n, rho)), wc.value + 1e-12);
        }
        DensityMatrix best = DensityMatrix::pure(wc.witness);
        EXPECT_NEAR(tvd(born_probabilities(m, best), born_probabilities(n, best)), wc.value, 1e-6);
    }
}

TEST(WcDistanceStochastic, Examples) {
    RMatrix f(2, 2);
    f << 0.9, 0.1, 0.1, 0.9;
    StochasticMatrix flip(f);
    EXPECT_DOUBLE_EQ(wc_distance_stochastic(flip, flip), 0.0);
    EXPECT_NEAR(wc_distance_stochastic(flip, StochasticMatrix::identity(2)), 0.1, 1e-15);
    EXPECT_THROW(wc_distance_stochastic(flip, StochasticMatrix::identity(4)), std::invalid_argument);
}

TEST(WcDistanceStochastic, EqualsWcOnDiagonalPovms) {
    std::mt19937_64 rng(17);
    for (std::size_t d : {2u, 4u}) {
        for (int t = 0; t < 300; ++t) {
            StochasticMatrix a = random_stochastic(d, d, rng);
            StochasticMatrix b = random_stochastic(d, d, rng);
            EXPECT_NEAR(
                wc_distance_stochastic(a, b), wc_distance(Povm::from_stochastic(a), Povm::from_stochastic(b)), 1e-9);
        }
    }
}

TEST(AcDistance, Examples) {
    Povm p = Povm::computational(2);
    EXPECT_DOUBLE_EQ(ac_distance(p, p), 0.0);
    EXPECT_NEAR(ac_distance(p, swapped_computational()), std::sqrt(2.0) / 2, 1e-12);
    RMatrix f(2, 2);
    f << 0.9, 0.1, 0.1, 0.9;
    EXPECT_NEAR(ac_distance(p, Povm::from_stochastic(StochasticMatrix(f))), 0.070710678118654752, 1e-12);
    EXPECT_THROW(ac_distance(p, Povm::computational(4)), std::invalid_argument);
}

TEST(AcDistance, AtMostWorstCase) {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 200; ++t) {
        Povm m = random_povm(4, 4, rng);
        Povm n = random_povm(4, 4, rng);
        EXPECT_LE(ac_distance(m, n), wc_distance(m, n) + 1e-12);
    }
}

TEST(MeasurementChoi, IdealQubit) {
    CMatrix j = measurement_choi(Povm::computational(2));
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = 0.5;
    expect(3, 3) = 0.5;
    EXPECT_LT((j - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MeasurementChoi, TraceOnePsdAndDiagonal) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        Povm m = random_povm(4, 4, rng);
        CMatrix j = measurement_choi(m);
        EXPECT_NEAR(j.trace().real(), 1.0, 1e-12);
        EXPECT_GE(min_eigenvalue(j), -1e-12);
        auto back = effects_from_choi(j, 4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_LT((back[i] - m.effect(i)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
    CMatrix jd = measurement_choi(Povm::from_stochastic(random_stochastic(4, 4, rng)));
    CMatrix off = jd;
    off.diagonal().setZero();
    EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-15);
}

// With J = (1/d) sum |i><i| (x) M_i^T, ||J_M - J_N||_HS = sqrt(sum ||dM_i||^2) / d, so
// Cauchy-Schwarz gives ac <= sqrt(d(d+1))/2 ||dJ|| and wc <= d^{3/2}/2 ||dJ||.
// The sharper sqrt(d+1)/2 and d/2 forms fail on random pairs.
TEST(MeasurementChoi, DistanceInequalities) {
    std::mt19937_64 rng(29);
    int stated_ac_violations = 0;
    int stated_wc_violations = 0;
    for (std::size_t d : {2u, 4u}) {
        for (int t = 0; t < 500; ++t) {
            Povm m = random_povm(d, d, rng);
            Povm n = random_povm(d, d, rng);
            double hs = hs_norm(measurement_choi(m) - measurement_choi(n));
            double dd = static_cast<double>(d);
            double ac = ac_distance(m, n);
            double wc = wc_distance(m, n);
            EXPECT_LE(ac, std::sqrt(dd * (dd + 1)) / 2 * hs + 1e-12);
            EXPECT_LE(wc, std::pow(dd, 1.5) / 2 * hs + 1e-12);
            stated_ac_violations += ac > std::sqrt(dd + 1) / 2 * hs;
            stated_wc_violations += wc > dd / 2 * hs;
        }
    }
    EXPECT_GT(stated_ac_violations, 0);
    EXPECT_GT(stated_wc_violations, 0);
}

TEST(MeasurementChoi, StatedBoundsTightOnSwap) {
    Povm p = Povm::computational(2);
    double hs = hs_norm(measurement_choi(p) - measurement_choi(swapped_computational()));
    EXPECT_NEAR(hs, 1.0, 1e-15);
    EXPECT_NEAR(wc_distance(p, swapped_computational()), 1.0 * hs, 1e-12);
}

TEST(QubitSubset, IndexConventions) {
    QubitSubset s({1, 3}, 4);
    EXPECT_EQ(s.local_index("0101"), 3u);
    EXPECT_EQ(s.local_index("0100"), 2u);
    EXPECT_EQ(s.local_index_of_full(0b0101), 3u);
    EXPECT_EQ(s.complement().qubits(), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(bits_to_index("100"), 4u);
    EXPECT_EQ(index_to_bits(4, 3), "100");
    EXPECT_EQ(all_subsets(4, 2).size(), 6u);
    EXPECT_THROW(QubitSubset({2, 1}, 4), std::invalid_argument);
    EXPECT_THROW(QubitSubset({4}, 4), std::invalid_argument);
}
