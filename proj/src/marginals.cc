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

#include "qdotkit/marginals.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qdotkit/error.h"
#include "qdotkit/parallel.h"

namespace qdk {

namespace {

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

/// Base-6 (QDOT) or base-2 (DDOT) index of the setting symbols on `subset`.
std::size_t input_index(std::string_view setting, const QubitSubset &subset, std::size_t base) {
    std::size_t idx = 0;
    for (std::size_t q : subset.qubits()) {
        idx = idx * base + static_cast<std::size_t>(setting[q] - '0');
    }
    return idx;
}

/// log(2^n - 2) without overflow for large n.
double log_two_pow_minus_two(std::size_t n) {
    double l2 = std::log(2.0);
    if (n < 60) {
        return std::log(std::ldexp(1.0, static_cast<int>(n)) - 2.0);
    }
    return static_cast<double>(n) * l2;
}

std::vector<QubitSubset> resolve_subsets(
    const ExperimentRecords &records, std::size_t k, const std::optional<std::vector<QubitSubset>> &subsets) {
    std::size_t cap = records.protocol == Protocol::kDdot ? 4 : 2;
    if (k == 0 || k > cap) {
        throw std::invalid_argument(
            "estimate_marginals: k must be in [1, " + std::to_string(cap) + "] for " + protocol_name(records.protocol));
    }
    if (k > records.num_qubits) {
        throw std::invalid_argument("estimate_marginals: k exceeds the number of qubits");
    }
    if (subsets) {
        for (const auto &s : *subsets) {
            if (s.size() != k || s.total_qubits() != records.num_qubits) {
                throw std::invalid_argument("estimate_marginals: subset " + s.to_string() + " does not match k or N");
            }
        }
        return *subsets;
    }
    double n_subsets = 1;
    for (std::size_t i = 0; i < k; ++i) {
        n_subsets = n_subsets * static_cast<double>(records.num_qubits - i) / static_cast<double>(i + 1);
    }
    double work = static_cast<double>(k) * n_subsets * std::ldexp(1.0, static_cast<int>(k));
    if (work > kMarginalWorkCap) {
        throw std::invalid_argument(
            "estimate_marginals: enumerating all subsets exceeds the work cap; pass an explicit subset list");
    }
    return all_subsets(records.num_qubits, k);
}

enum class Pooling { kPooled, kPerRound };

MarginalEstimate estimate_one(const ExperimentRecords &records, const QubitSubset &subset, Pooling pooling) {
    std::size_t k = subset.size();
    std::size_t outcomes = pow2(k);
    std::size_t base = alphabet_size(records.protocol);
    std::size_t inputs = ipow(base, k);
    MarginalEstimate e{subset, RMatrix::Zero(outcomes, inputs), std::vector<std::uint64_t>(inputs, 0),
                       std::vector<std::uint64_t>(inputs, 0)};
    // Integer accumulation keeps the pooled estimate independent of record order.
    std::vector<std::uint64_t> counts(outcomes * inputs, 0);
    std::vector<std::uint64_t> local(outcomes);
    for (const auto &r : records.records) {
        std::size_t y = input_index(r.setting, subset, base);
        e.occurrences[y] += 1;
        e.shots[y] += r.shots;
        if (pooling == Pooling::kPooled) {
            for (const auto &[bits, n] : r.counts) {
                counts[subset.local_index(bits) * inputs + y] += n;
            }
        } else {
            std::fill(local.begin(), local.end(), 0);
            for (const auto &[bits, n] : r.counts) {
                local[subset.local_index(bits)] += n;
            }
            if (r.shots == 0) {
                continue;
            }
            for (std::size_t x = 0; x < outcomes; ++x) {
                e.elements(x, y) += static_cast<double>(local[x]) / static_cast<double>(r.shots);
            }
        }
    }
    for (std::size_t y = 0; y < inputs; ++y) {
        if (e.occurrences[y] == 0) {
            continue;
        }
        for (std::size_t x = 0; x < outcomes; ++x) {
            if (pooling == Pooling::kPooled) {
                e.elements(x, y) = static_cast<double>(counts[x * inputs + y]) / static_cast<double>(e.shots[y]);
            } else {
                e.elements(x, y) /= static_cast<double>(e.occurrences[y]);
            }
        }
    }
    return e;
}

MarginalTable estimate_with(
    const ExperimentRecords &records, std::size_t k, const std::optional<std::vector<QubitSubset>> &subsets,
    std::size_t threads, Pooling pooling) {
    auto list = resolve_subsets(records, k, subsets);
    MarginalTable table{records.protocol, k, records.num_qubits, std::vector<MarginalEstimate>(list.size())};
    parallel_for(
        list.size(), [&](std::size_t i) { table.entries[i] = estimate_one(records, list[i], pooling); }, threads);
    return table;
}

CMatrix projected_psd(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    RVector ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix projected_tp(const CMatrix &m, std::size_t num_outcomes, std::size_t dim) {
    CMatrix residual = partial_trace_first(m, num_outcomes, dim) - CMatrix::Identity(dim, dim) / double(dim);
    return m - kron(CMatrix(CMatrix::Identity(num_outcomes, num_outcomes)), residual) / double(num_outcomes);
}

double tp_residual(const CMatrix &m, std::size_t num_outcomes, std::size_t dim) {
    return (partial_trace_first(m, num_outcomes, dim) - CMatrix::Identity(dim, dim) / double(dim)).norm();
}

}  // namespace

bool MarginalEstimate::fully_covered() const {
    return std::all_of(occurrences.begin(), occurrences.end(), [](std::uint64_t h) { return h > 0; });
}

std::vector<std::size_t> MarginalEstimate::uncovered_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < occurrences.size(); ++y) {
        if (occurrences[y] == 0) {
            out.push_back(y);
        }
    }
    return out;
}

StochasticMatrix MarginalEstimate::lambda() const {
    if (elements.cols() != elements.rows()) {
        throw CoverageError("marginal on " + subset.to_string() + " holds QDOT inputs, not a noise matrix");
    }
    auto missing = uncovered_columns();
    if (!missing.empty()) {
        std::ostringstream os;
        os << "marginal on " << subset.to_string() << " has uncovered input settings:";
        for (auto y : missing) {
            os << ' ' << index_to_bits(y, subset.size());
        }
        throw CoverageError(os.str());
    }
    return StochasticMatrix(elements);
}

const MarginalEstimate &MarginalTable::at(const QubitSubset &subset) const {
    for (const auto &e : entries) {
        if (e.subset == subset) {
            return e;
        }
    }
    throw std::out_of_range("no marginal estimated for subset " + subset.to_string());
}

MarginalTable estimate_marginals(
    const ExperimentRecords &records, std::size_t k, const std::optional<std::vector<QubitSubset>> &subsets,
    std::size_t threads) {
    return estimate_with(records, k, subsets, threads, Pooling::kPooled);
}

MarginalTable estimate_marginals_multishot(
    const ExperimentRecords &records, std::size_t k, const std::optional<std::vector<QubitSubset>> &subsets,
    std::size_t threads) {
    return estimate_with(records, k, subsets, threads, Pooling::kPerRound);
}

CMatrix choi_from_matrix_elements(const RMatrix &elements, std::size_t k) {
    std::size_t d = pow2(k);
    std::size_t inputs = ipow(6, k);
    if (static_cast<std::size_t>(elements.rows()) != d || static_cast<std::size_t>(elements.cols()) != inputs) {
        throw std::invalid_argument("choi_from_matrix_elements: expected a 2^k x 6^k table");
    }
    // Per-symbol dual operators 3 rho^T - I.
    std::vector<CMatrix> dual(6);
    for (int s = 0; s < 6; ++s) {
        dual[s] = 3.0 * setting_to_state(s).matrix().transpose() - CMatrix::Identity(2, 2);
    }
    CMatrix j = CMatrix::Zero(d * d, d * d);
    for (std::size_t y = 0; y < inputs; ++y) {
        CMatrix op = CMatrix::Identity(1, 1);
        std::size_t rest = y;
        std::vector<int> symbols(k);
        for (std::size_t i = k; i-- > 0;) {
            symbols[i] = static_cast<int>(rest % 6);
            rest /= 6;
        }
        for (std::size_t i = 0; i < k; ++i) {
            op = kron(op, dual[symbols[i]]);
        }
        for (std::size_t x = 0; x < d; ++x) {
            j.block(x * d, x * d, d, d) += elements(x, y) * op;
        }
    }
    j /= std::pow(3.0, double(k)) * double(d);
    return (j + j.adjoint()) / 2.0;
}

CMatrix estimate_choi_ls(const ExperimentRecords &records, const QubitSubset &subset) {
    if (records.protocol != Protocol::kQdot) {
        throw std::invalid_argument("estimate_choi_ls needs QDOT records");
    }
    MarginalEstimate e = estimate_one(records, subset, Pooling::kPooled);
    if (!e.fully_covered()) {
        throw CoverageError(
            "Choi estimate on " + subset.to_string() + ": " + std::to_string(e.uncovered_columns().size()) +
            " input settings uncovered");
    }
    return choi_from_matrix_elements(e.elements, subset.size());
}

CMatrix project_cptp(const CMatrix &choi, std::size_t num_outcomes, std::size_t dim, const CptpOptions &opts) {
    if (static_cast<std::size_t>(choi.rows()) != num_outcomes * dim || choi.rows() != choi.cols()) {
        throw std::invalid_argument("project_cptp: dimension mismatch");
    }
    if (max_abs_antihermitian(choi) > 1e-9) {
        throw std::invalid_argument("project_cptp: input must be Hermitian");
    }
    CMatrix x = (choi + choi.adjoint()) / 2.0;
    CMatrix p = CMatrix::Zero(x.rows(), x.cols());
    CMatrix q = CMatrix::Zero(x.rows(), x.cols());
    CMatrix y = x;
    double step = 0;
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        CMatrix y_new = projected_psd(x + p);
        p = x + p - y_new;
        CMatrix x_new = projected_tp(y_new + q, num_outcomes, dim);
        q = y_new + q - x_new;
        step = (x_new - x).norm() + (y_new - y).norm();
        x = std::move(x_new);
        y = std::move(y_new);
        if (step < opts.step_tol && tp_residual(y, num_outcomes, dim) <= opts.tp_tol) {
            return (y + y.adjoint()) / 2.0;
        }
    }
    std::ostringstream os;
    os << "project_cptp did not converge in " << opts.max_iterations << " iterations (step " << step
       << ", TP residual " << tp_residual(y, num_outcomes, dim) << ", min eigenvalue " << min_eigenvalue(x) << ")";
    throw ConvergenceError(os.str());
}

Povm povm_from_marginal(const MarginalEstimate &entry) {
    return Povm::from_stochastic(entry.lambda());
}

Povm povm_from_marginal(const MarginalEstimate &entry, Protocol protocol) {
    if (protocol == Protocol::kDdot) {
        return povm_from_marginal(entry);
    }
    if (!entry.fully_covered()) {
        throw CoverageError("marginal on " + entry.subset.to_string() + " has uncovered input settings");
    }
    std::size_t k = entry.subset.size();
    std::size_t d = pow2(k);
    CMatrix j = project_cptp(choi_from_matrix_elements(entry.elements, k), d, d);
    auto effects = effects_from_choi(j, d, d);
    CMatrix total = CMatrix::Zero(d, d);
    for (auto &e : effects) {
        e = (e + e.adjoint()) / 2.0;
        total += e;
    }
    // S^{-1/2} M_x S^{-1/2} restores completeness exactly and keeps each effect PSD.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(total);
    CMatrix inv_sqrt = es.operatorInverseSqrt();
    for (auto &e : effects) {
        e = inv_sqrt * e * inv_sqrt;
        e = (e + e.adjoint()) / 2.0;
    }
    return Povm(std::move(effects));
}

TvdBound tvd_confidence(std::uint64_t n_shots, std::size_t dim, double p_err) {
    if (dim < 2) {
        throw std::invalid_argument("tvd_confidence: dim must be at least 2");
    }
    if (!(p_err > 0 && p_err < 1)) {
        throw std::invalid_argument("tvd_confidence: p_err must lie in (0, 1)");
    }
    if (n_shots == 0) {
        throw std::invalid_argument("tvd_confidence: zero shots");
    }
    double eps = std::sqrt((log_two_pow_minus_two(dim) - std::log(p_err)) / (2.0 * static_cast<double>(n_shots)));
    return TvdBound{eps, p_err, n_shots, dim};
}

double noise_matrix_confidence(std::size_t k, std::uint64_t n_shots, double p_err) {
    if (!(p_err > 0 && p_err < 1) || n_shots == 0 || k == 0) {
        throw std::invalid_argument("noise_matrix_confidence: invalid arguments");
    }
    double log_count = static_cast<double>(k) * std::log(2.0) + log_two_pow_minus_two(pow2(k));
    return std::sqrt((log_count - std::log(p_err)) / (2.0 * static_cast<double>(n_shots)));
}

}  // namespace qdk
