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

#include "qdotkit/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qdotkit/parallel.h"
#include "qdotkit/rng.h"

namespace qdk {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint64_t kRunTag = 0x434c5553;
constexpr std::size_t kMaxPasses = 10000;
// Gains at or below this are rounding noise (coefficients live in [0, 1]).
constexpr double kMinGain = 1e-12;

// Working state of one run: cluster id per qubit and member lists (may hold
// empty clusters).
class Search {
   public:
    Search(const CorrelationMatrix &corr, const ClusteringConfig &config, double cavg)
        : n_(corr.num_qubits), c_max_(config.c_max), penalty_(cavg * config.alpha), w_(corr.values + corr.values.transpose()) {}

    void load(const Partition &p) {
        members_.clear();
        label_.assign(n_, 0);
        for (const auto &c : p.clusters) {
            for (auto q : c.qubits()) {
                label_[q] = members_.size();
            }
            members_.push_back(c.qubits());
        }
    }

    double score(const std::vector<std::size_t> &c) const {
        if (c.size() > c_max_) {
            return kNegInf;
        }
        double s = 0;
        for (std::size_t a = 0; a < c.size(); ++a) {
            for (std::size_t b = a + 1; b < c.size(); ++b) {
                s += w_(c[a], c[b]);
            }
        }
        double sz = static_cast<double>(c.size());
        return s - (c.empty() ? 0.0 : penalty_ * sz * sz);
    }

    static std::vector<std::size_t> without(const std::vector<std::size_t> &c, std::size_t q) {
        std::vector<std::size_t> out;
        for (auto x : c) {
            if (x != q) {
                out.push_back(x);
            }
        }
        return out;
    }

    static std::vector<std::size_t> with(std::vector<std::size_t> c, std::size_t q) {
        c.insert(std::upper_bound(c.begin(), c.end(), q), q);
        return c;
    }

    // Objective gain of each candidate change for the pair (i, j); index 0
    // moves i to j's cluster, 1 moves j to i's cluster, 2 swaps.
    struct Candidate {
        double gain;
        std::vector<std::size_t> ci;
        std::vector<std::size_t> cj;
    };

    std::vector<Candidate> candidates(std::size_t i, std::size_t j) const {
        const auto &a = members_[label_[i]];
        const auto &b = members_[label_[j]];
        double before = score(a) + score(b);
        std::vector<Candidate> out;
        auto add = [&](std::vector<std::size_t> na, std::vector<std::size_t> nb) {
            double after = score(na) + score(nb);
            double gain = after == kNegInf ? kNegInf : (before == kNegInf ? std::numeric_limits<double>::infinity() : after - before);
            out.push_back({gain, std::move(na), std::move(nb)});
        };
        add(without(a, i), with(b, i));
        add(with(a, j), without(b, j));
        add(with(without(a, i), j), with(without(b, j), i));
        return out;
    }

    void apply(std::size_t i, std::size_t j, Candidate &c) {
        std::size_t la = label_[i];
        std::size_t lb = label_[j];
        members_[la] = std::move(c.ci);
        members_[lb] = std::move(c.cj);
        for (auto q : members_[la]) {
            label_[q] = la;
        }
        for (auto q : members_[lb]) {
            label_[q] = lb;
        }
    }

    bool same_cluster(std::size_t i, std::size_t j) const { return label_[i] == label_[j]; }

    Partition partition() const {
        Partition p{n_, {}};
        for (const auto &m : members_) {
            if (!m.empty()) {
                p.clusters.emplace_back(m, n_);
            }
        }
        p.canonicalize();
        return p;
    }

   private:
    std::size_t n_;
    std::size_t c_max_;
    double penalty_;
    RMatrix w_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<std::size_t> label_;
};

void check_corr(const CorrelationMatrix &corr) {
    if (corr.num_qubits == 0 || static_cast<std::size_t>(corr.values.rows()) != corr.num_qubits ||
        static_cast<std::size_t>(corr.values.cols()) != corr.num_qubits) {
        throw std::invalid_argument("correlation matrix is empty or not N x N");
    }
}

}  // namespace

void Partition::validate() const {
    std::vector<bool> seen(num_qubits, false);
    for (const auto &c : clusters) {
        if (c.empty()) {
            throw std::invalid_argument("partition has an empty cluster");
        }
        if (c.total_qubits() != num_qubits) {
            throw std::invalid_argument("partition cluster has wrong register size");
        }
        for (auto q : c.qubits()) {
            if (seen[q]) {
                throw std::invalid_argument("partition clusters overlap at qubit " + std::to_string(q));
            }
            seen[q] = true;
        }
    }
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (!seen[q]) {
            throw std::invalid_argument("partition does not cover qubit " + std::to_string(q));
        }
    }
}

Partition &Partition::canonicalize() {
    validate();
    std::sort(clusters.begin(), clusters.end(), [](const QubitSubset &a, const QubitSubset &b) { return a[0] < b[0]; });
    return *this;
}

std::size_t Partition::size_weight() const {
    std::size_t s = 0;
    for (const auto &c : clusters) {
        s += c.size() * c.size();
    }
    return s;
}

Partition Partition::singletons(std::size_t num_qubits) {
    Partition p{num_qubits, {}};
    for (std::size_t q = 0; q < num_qubits; ++q) {
        p.clusters.emplace_back(std::vector<std::size_t>{q}, num_qubits);
    }
    return p;
}

bool partition_less(const Partition &a, const Partition &b) {
    return std::lexicographical_compare(
        a.clusters.begin(), a.clusters.end(), b.clusters.begin(), b.clusters.end(),
        [](const QubitSubset &x, const QubitSubset &y) { return x.qubits() < y.qubits(); });
}

void ClusteringConfig::validate() const {
    if (c_max < 1) {
        throw std::invalid_argument("c_max must be at least 1");
    }
    if (!(alpha >= 0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be a finite non-negative number");
    }
    if (n_runs < 1) {
        throw std::invalid_argument("n_runs must be at least 1");
    }
}

double c_avg(const CorrelationMatrix &corr, std::size_t c_max) {
    check_corr(corr);
    if (c_max < 1) {
        throw std::invalid_argument("c_max must be at least 1");
    }
    std::size_t n = corr.num_qubits;
    std::vector<double> v;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (k != l) {
                v.push_back(corr.values(k, l));
            }
        }
    }
    if (v.empty()) {
        return 0.0;
    }
    std::size_t take = c_max == 1 ? n : n * (c_max - 1);
    take = std::min(take, v.size());
    std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(take), v.end(), std::greater<>());
    double s = 0;
    for (std::size_t i = 0; i < take; ++i) {
        s += v[i];
    }
    return s / static_cast<double>(take);
}

double objective(const Partition &p, const CorrelationMatrix &corr, const ClusteringConfig &config) {
    check_corr(corr);
    p.validate();
    double cavg = c_avg(corr, config.c_max);
    double total = 0;
    for (const auto &c : p.clusters) {
        if (c.size() > config.c_max) {
            return kNegInf;
        }
        for (auto k : c.qubits()) {
            for (auto l : c.qubits()) {
                if (k != l) {
                    total += corr.values(k, l);
                }
            }
        }
        double sz = static_cast<double>(c.size());
        total -= cavg * config.alpha * sz * sz;
    }
    return total;
}

Partition initial_pairing(const CorrelationMatrix &corr, const ClusteringConfig &config) {
    check_corr(corr);
    config.validate();
    std::size_t n = corr.num_qubits;
    double cavg = c_avg(corr, config.c_max);
    struct Pair {
        double c;
        std::size_t i;
        std::size_t j;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.push_back({corr.values(i, j) + corr.values(j, i), i, j});
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair &a, const Pair &b) { return a.c > b.c; });
    // Pair gain over two singletons: c_ij - c_avg * alpha * (4 - 2).
    std::vector<bool> used(n, false);
    Partition p{n, {}};
    if (config.c_max >= 2) {
        for (const auto &pr : pairs) {
            if (used[pr.i] || used[pr.j] || !(pr.c - 2.0 * cavg * config.alpha > kMinGain)) {
                continue;
            }
            used[pr.i] = used[pr.j] = true;
            p.clusters.emplace_back(std::vector<std::size_t>{pr.i, pr.j}, n);
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (!used[q]) {
            p.clusters.emplace_back(std::vector<std::size_t>{q}, n);
        }
    }
    p.canonicalize();
    return p;
}

Partition cluster_qubits(const CorrelationMatrix &corr, const ClusteringConfig &config) {
    check_corr(corr);
    config.validate();
    std::size_t n = corr.num_qubits;
    double cavg = c_avg(corr, config.c_max);
    Partition start = initial_pairing(corr, config);

    std::vector<Partition> results(config.n_runs);
    parallel_for(
        config.n_runs,
        [&](std::size_t run) {
            auto rng = make_stream(config.seed, {kRunTag, run});
            Search s(corr, config, cavg);
            s.load(start);
            std::vector<std::pair<std::size_t, std::size_t>> order;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    order.emplace_back(i, j);
                }
            }
            for (std::size_t pass = 0; pass < kMaxPasses; ++pass) {
                std::shuffle(order.begin(), order.end(), rng);
                bool updated = false;
                for (auto [i, j] : order) {
                    if (s.same_cluster(i, j)) {
                        continue;
                    }
                    auto cands = s.candidates(i, j);
                    std::vector<std::size_t> improving;
                    for (std::size_t c = 0; c < cands.size(); ++c) {
                        if (cands[c].gain > kMinGain) {
                            improving.push_back(c);
                        }
                    }
                    if (improving.empty()) {
                        continue;
                    }
                    std::size_t pick = improving[0];
                    if (config.randomized_acceptance) {
                        pick = improving[std::uniform_int_distribution<std::size_t>(0, improving.size() - 1)(rng)];
                    } else {
                        for (auto c : improving) {
                            if (cands[c].gain > cands[pick].gain) {
                                pick = c;
                            }
                        }
                    }
                    s.apply(i, j, cands[pick]);
                    updated = true;
                }
                if (!updated) {
                    break;
                }
            }
            results[run] = s.partition();
        },
        config.threads);

    Partition best = results[0];
    double best_obj = objective(best, corr, config);
    for (std::size_t r = 1; r < results.size(); ++r) {
        double o = objective(results[r], corr, config);
        if (o > best_obj || (o == best_obj && partition_less(results[r], best))) {
            best = results[r];
            best_obj = o;
        }
    }
    return best;
}

AlphaSelection select_alpha_by_benchmark(
    const CorrelationMatrix &corr, const std::vector<double> &alphas, const ClusteringConfig &base,
    const std::function<double(const Partition &)> &scorer) {
    if (alphas.empty()) {
        throw std::invalid_argument("alpha scan needs at least one value");
    }
    AlphaSelection sel;
    const AlphaScore *best = nullptr;
    sel.scanned.reserve(alphas.size());
    for (double a : alphas) {
        AlphaScore row;
        row.alpha = a;
        try {
            ClusteringConfig cfg = base;
            cfg.alpha = a;
            row.partition = cluster_qubits(corr, cfg);
            row.score = scorer(row.partition);
            row.ok = true;
        } catch (const std::exception &e) {
            row.error = e.what();
        }
        sel.scanned.push_back(std::move(row));
    }
    for (const auto &row : sel.scanned) {
        if (!row.ok) {
            continue;
        }
        bool better = best == nullptr || row.score < best->score ||
                      (row.score == best->score && (row.partition.size_weight() < best->partition.size_weight() ||
                                                    (row.partition.size_weight() == best->partition.size_weight() &&
                                                     row.alpha < best->alpha)));
        if (better) {
            best = &row;
        }
    }
    if (best == nullptr) {
        std::string msg = "every alpha failed:";
        for (const auto &row : sel.scanned) {
            msg += " [" + std::to_string(row.alpha) + ": " + row.error + "]";
        }
        throw std::runtime_error(msg);
    }
    sel.alpha = best->alpha;
    sel.partition = best->partition;
    sel.score = best->score;
    return sel;
}

}  // namespace qdk
