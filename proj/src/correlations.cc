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

#include "qdotkit/correlations.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdotkit/distances.h"
#include "qdotkit/parallel.h"

namespace qdk {

namespace {

void check_pair(const StochasticMatrix &m, std::size_t target) {
    if (m.dim_in() != 4 || m.dim_out() != 4) {
        throw std::invalid_argument("two-qubit noise matrix must be 4x4");
    }
    if (target > 1) {
        throw std::invalid_argument("target position must be 0 or 1");
    }
}

/// Pair index with the target bit `t` and the source bit `s`.
std::size_t pair_index(std::size_t target, std::size_t t, std::size_t s) {
    return target == 0 ? 2 * t + s : 2 * s + t;
}

Eigen::Vector3d fibonacci_point(std::size_t i, std::size_t n) {
    double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * static_cast<double>(i);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

Eigen::Vector3d spherical(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double distance(const Povm &a, const Povm &b, Metric metric) {
    return metric == Metric::kWc ? wc_distance(a, b) : ac_distance(a, b);
}

}  // namespace

std::string metric_name(Metric m) {
    return m == Metric::kWc ? "wc" : "ac";
}

Metric parse_metric(const std::string &name) {
    if (name == "wc" || name == "WC") {
        return Metric::kWc;
    }
    if (name == "ac" || name == "AC") {
        return Metric::kAc;
    }
    throw std::invalid_argument("unknown metric '" + name + "'");
}

std::string kind_name(CorrelationKind k) {
    return k == CorrelationKind::kClassical ? "classical" : "quantum";
}

CorrelationKind parse_kind(const std::string &name) {
    if (name == "classical") {
        return CorrelationKind::kClassical;
    }
    if (name == "quantum") {
        return CorrelationKind::kQuantum;
    }
    throw std::invalid_argument("unknown correlation kind '" + name + "'");
}

StochasticMatrix conditional_map(const StochasticMatrix &lambda2, std::size_t target, std::size_t source_input) {
    check_pair(lambda2, target);
    RMatrix l = RMatrix::Zero(2, 2);
    for (std::size_t xt = 0; xt < 2; ++xt) {
        for (std::size_t yt = 0; yt < 2; ++yt) {
            for (std::size_t xs = 0; xs < 2; ++xs) {
                l(xt, yt) += lambda2(pair_index(target, xt, xs), pair_index(target, yt, source_input));
            }
        }
    }
    return StochasticMatrix(std::move(l));
}

double classical_corr_wc(const StochasticMatrix &lambda2, std::size_t target) {
    return wc_distance_stochastic(conditional_map(lambda2, target, 0), conditional_map(lambda2, target, 1));
}

double classical_corr_ac(const StochasticMatrix &lambda2, std::size_t target) {
    return ac_distance(
        Povm::from_stochastic(conditional_map(lambda2, target, 0)),
        Povm::from_stochastic(conditional_map(lambda2, target, 1)));
}

double classical_corr_ac_compact(const StochasticMatrix &lambda2, std::size_t target) {
    RMatrix d = conditional_map(lambda2, target, 0).entries() - conditional_map(lambda2, target, 1).entries();
    double tr = d.trace();
    return 0.5 * std::sqrt(0.5 * d.squaredNorm() + tr * tr);
}

double quantum_corr(const Povm &reduced2, std::size_t target, Metric metric, const QuantumCorrOptions &opts) {
    if (reduced2.dim() != 4 || reduced2.num_outcomes() != 4) {
        throw std::invalid_argument("quantum_corr needs a two-qubit POVM");
    }
    if (target > 1) {
        throw std::invalid_argument("target position must be 0 or 1");
    }
    QubitSubset target_set({target}, 2);
    CMatrix id = CMatrix::Identity(2, 2);
    auto objective = [&](const Eigen::Vector3d &n) {
        CMatrix bloch = n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
        DensityMatrix rho((id + bloch) / 2.0);
        DensityMatrix sigma((id - bloch) / 2.0);
        return distance(reduce_povm(reduced2, target_set, rho), reduce_povm(reduced2, target_set, sigma), metric);
    };

    // The Z axis realizes the classical coefficient, so the search never
    // returns less than it.
    double best = objective({0, 0, 1});
    double best_theta = 0;
    double best_phi = 0;
    for (std::size_t i = 0; i < opts.grid_points; ++i) {
        Eigen::Vector3d n = fibonacci_point(i, opts.grid_points);
        double v = objective(n);
        if (v > best) {
            best = v;
            best_theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
            best_phi = std::atan2(n.y(), n.x());
        }
    }
    double step = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(std::max<std::size_t>(opts.grid_points, 1)));
    for (std::size_t it = 0; it < opts.refine_steps && step > opts.tol; ++it) {
        bool improved = false;
        const double moves[4][2] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
        for (const auto &mv : moves) {
            double th = best_theta + mv[0];
            double ph = best_phi + mv[1];
            double v = objective(spherical(th, ph));
            if (v > best + opts.tol * 1e-3) {
                best = v;
                best_theta = th;
                best_phi = ph;
                improved = true;
            }
        }
        if (!improved) {
            step /= 2;
        }
    }
    return best;
}

CorrelationMatrix classical_correlations(const MarginalTable &table, Metric metric, double p_err) {
    if (table.k != 2 || table.protocol != Protocol::kDdot) {
        throw std::invalid_argument("classical_correlations needs a k = 2 DDOT marginal table");
    }
    CorrelationMatrix out{table.num_qubits, metric, CorrelationKind::kClassical,
                          RMatrix::Zero(table.num_qubits, table.num_qubits)};
    // With qubits outside the pair, columns pool circuits whose complement
    // settings differ; the number of circuits, not shots, then limits the
    // accuracy.
    const bool pooled = table.num_qubits > 2;
    std::uint64_t min_samples = std::numeric_limits<std::uint64_t>::max();
    for (const auto &e : table.entries) {
        StochasticMatrix lam = e.lambda();
        std::size_t a = e.subset[0];
        std::size_t b = e.subset[1];
        // c_{b->a}: target position 0; c_{a->b}: target position 1.
        out.values(b, a) = metric == Metric::kWc ? classical_corr_wc(lam, 0) : classical_corr_ac(lam, 0);
        out.values(a, b) = metric == Metric::kWc ? classical_corr_wc(lam, 1) : classical_corr_ac(lam, 1);
        for (auto s : pooled ? e.occurrences : e.shots) {
            min_samples = std::min(min_samples, s);
        }
    }
    if (!table.entries.empty() && min_samples > 0) {
        out.noise_floor = noise_matrix_confidence(1, min_samples, p_err);
    }
    return out;
}

CorrelationMatrix quantum_correlations(
    const MarginalTable &table, Metric metric, const QuantumCorrOptions &opts, std::size_t threads) {
    if (table.k != 2) {
        throw std::invalid_argument("quantum_correlations needs a k = 2 marginal table");
    }
    CorrelationMatrix out{table.num_qubits, metric, CorrelationKind::kQuantum,
                          RMatrix::Zero(table.num_qubits, table.num_qubits)};
    std::vector<std::pair<double, double>> vals(table.entries.size());
    parallel_for(
        table.entries.size(),
        [&](std::size_t i) {
            Povm m = povm_from_marginal(table.entries[i], table.protocol);
            vals[i] = {quantum_corr(m, 0, metric, opts), quantum_corr(m, 1, metric, opts)};
        },
        threads);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        std::size_t a = table.entries[i].subset[0];
        std::size_t b = table.entries[i].subset[1];
        out.values(b, a) = vals[i].first;
        out.values(a, b) = vals[i].second;
    }
    return out;
}

std::string correlations_to_dot(const CorrelationMatrix &corr) {
    std::ostringstream os;
    os << "digraph correlations {\n";
    for (std::size_t q = 0; q < corr.num_qubits; ++q) {
        os << "  q" << q << ";\n";
    }
    for (std::size_t j = 0; j < corr.num_qubits; ++j) {
        for (std::size_t i = 0; i < corr.num_qubits; ++i) {
            double v = corr.values(j, i);
            if (i != j && v >= corr.threshold) {
                os << "  q" << j << " -> q" << i << " [label=\"" << std::fixed << std::setprecision(4) << v
                   << "\"];\n";
                os.unsetf(std::ios::fixed);
            }
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace qdk
