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

#include "qdotkit/reconstruct.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "qdotkit/error.h"
#include "qdotkit/parallel.h"

namespace qdk {

namespace {

// Bit of `qubit` in an index over `set` (set[0] is the most significant bit).
std::size_t bit_of(std::size_t index, const QubitSubset &set, std::size_t qubit) {
    return (index >> (set.size() - 1 - set.position_of(qubit))) & 1U;
}

// Index over `sub` read from an index over `set`; every qubit of sub is in set.
std::size_t sub_index(std::size_t index, const QubitSubset &set, const QubitSubset &sub) {
    std::size_t out = 0;
    for (auto q : sub.qubits()) {
        out = (out << 1) | bit_of(index, set, q);
    }
    return out;
}

// Index over `set` assembled from indices over two disjoint parts covering it.
std::size_t join_index(const QubitSubset &set, const QubitSubset &a, std::size_t ia, const QubitSubset &b, std::size_t ib) {
    std::size_t out = 0;
    for (auto q : set.qubits()) {
        std::size_t bit = a.contains(q) ? bit_of(ia, a, q) : bit_of(ib, b, q);
        out = (out << 1) | bit;
    }
    return out;
}

// Cluster noise restricted to A = C∩S, conditioned on the neighbors inside S:
// table[y_NS](x_A, y_A).
std::vector<RMatrix> cluster_marginal(const Cluster &cl, const QubitSubset &s) {
    const QubitSubset &c = cl.qubits;
    const QubitSubset &nb = cl.neighborhood;
    QubitSubset a = c.intersected(s);
    QubitSubset c_rest = c.minus(s);
    QubitSubset n_in = nb.intersected(s);
    QubitSubset n_out = nb.minus(s);
    std::size_t da = pow2(a.size());
    std::size_t dcr = pow2(c_rest.size());
    std::size_t dni = pow2(n_in.size());
    std::size_t dno = pow2(n_out.size());
    double norm = 1.0 / static_cast<double>(dcr * dno);
    std::vector<RMatrix> table(dni, RMatrix::Zero(da, da));
    for (std::size_t yni = 0; yni < dni; ++yni) {
        for (std::size_t yno = 0; yno < dno; ++yno) {
            const StochasticMatrix &m = cl.noise[join_index(nb, n_in, yni, n_out, yno)];
            for (std::size_t ya = 0; ya < da; ++ya) {
                for (std::size_t ycr = 0; ycr < dcr; ++ycr) {
                    std::size_t yc = join_index(c, a, ya, c_rest, ycr);
                    for (std::size_t xa = 0; xa < da; ++xa) {
                        double sum = 0;
                        for (std::size_t xcr = 0; xcr < dcr; ++xcr) {
                            sum += m(join_index(c, a, xa, c_rest, xcr), yc);
                        }
                        table[yni](xa, ya) += norm * sum;
                    }
                }
            }
        }
    }
    return table;
}

}  // namespace

CnModel reconstruct_cn(
    const ExperimentRecords &records, const Partition &partition,
    const std::optional<std::vector<QubitSubset>> &neighborhoods, std::uint64_t min_count, std::size_t threads) {
    records.validate();
    partition.validate();
    if (records.protocol != Protocol::kDdot) {
        throw std::invalid_argument("CN reconstruction needs DDOT records");
    }
    if (partition.num_qubits != records.num_qubits) {
        throw std::invalid_argument("partition and records disagree on the number of qubits");
    }
    std::size_t n = records.num_qubits;
    std::size_t nc = partition.clusters.size();
    if (neighborhoods && neighborhoods->size() != nc) {
        throw std::invalid_argument("one neighborhood per cluster required");
    }
    std::vector<Cluster> clusters(nc);
    std::vector<std::string> gaps(nc);
    parallel_for(
        nc,
        [&](std::size_t ci) {
            const QubitSubset &c = partition.clusters[ci];
            QubitSubset nb = neighborhoods ? (*neighborhoods)[ci] : QubitSubset({}, n);
            if (nb.total_qubits() != n || !nb.is_disjoint(c)) {
                throw std::invalid_argument("neighborhood of " + c.to_string() + " overlaps it or has wrong size");
            }
            std::size_t dc = pow2(c.size());
            std::size_t dn = pow2(nb.size());
            std::vector<RMatrix> counts(dn, RMatrix::Zero(dc, dc));
            std::vector<std::vector<std::uint64_t>> occ(dn, std::vector<std::uint64_t>(dc, 0));
            std::vector<std::vector<std::uint64_t>> shots(dn, std::vector<std::uint64_t>(dc, 0));
            for (const auto &r : records.records) {
                std::size_t yc = c.local_index(r.setting);
                std::size_t yn = nb.local_index(r.setting);
                occ[yn][yc] += 1;
                shots[yn][yc] += r.shots;
                for (const auto &[bits, k] : r.counts) {
                    counts[yn](c.local_index(bits), yc) += static_cast<double>(k);
                }
            }
            std::ostringstream missing;
            Cluster cl{c, nb, {}};
            for (std::size_t yn = 0; yn < dn; ++yn) {
                for (std::size_t yc = 0; yc < dc; ++yc) {
                    if (occ[yn][yc] < min_count || shots[yn][yc] == 0) {
                        missing << " (" << c.to_string() << ", y_N=" << (nb.empty() ? "-" : index_to_bits(yn, nb.size()))
                                << ", y_C=" << index_to_bits(yc, c.size()) << ": " << occ[yn][yc] << ")";
                    } else {
                        counts[yn].col(yc) /= static_cast<double>(shots[yn][yc]);
                    }
                }
                if (missing.tellp() == 0) {
                    cl.noise.emplace_back(counts[yn]);
                }
            }
            gaps[ci] = missing.str();
            clusters[ci] = std::move(cl);
        },
        threads);
    std::string all_gaps;
    for (const auto &g : gaps) {
        all_gaps += g;
    }
    if (!all_gaps.empty()) {
        throw CoverageError("settings below min_count=" + std::to_string(min_count) + ":" + all_gaps);
    }
    return CnModel(n, std::move(clusters));
}

CnModel reconstruct_tpn(const ExperimentRecords &records, std::uint64_t min_count, std::size_t threads) {
    return reconstruct_cn(records, Partition::singletons(records.num_qubits), {}, min_count, threads);
}

std::vector<QubitSubset> suggest_neighborhoods(
    const CorrelationMatrix &corr, const Partition &partition, double threshold, std::size_t n_max) {
    if (!(threshold > 0 && threshold < 1)) {
        throw std::invalid_argument("neighborhood threshold must lie in (0, 1)");
    }
    partition.validate();
    std::size_t n = partition.num_qubits;
    if (corr.num_qubits != n) {
        throw std::invalid_argument("correlation matrix and partition disagree on the number of qubits");
    }
    std::vector<QubitSubset> out;
    for (const auto &c : partition.clusters) {
        std::vector<std::pair<double, std::size_t>> cand;
        for (std::size_t j = 0; j < n; ++j) {
            if (c.contains(j)) {
                continue;
            }
            double best = 0;
            for (auto i : c.qubits()) {
                best = std::max(best, corr.values(j, i));
            }
            if (best > threshold) {
                cand.emplace_back(best, j);
            }
        }
        std::stable_sort(cand.begin(), cand.end(), [](const auto &x, const auto &y) { return x.first > y.first; });
        std::vector<std::size_t> pick;
        for (std::size_t t = 0; t < std::min(n_max, cand.size()); ++t) {
            pick.push_back(cand[t].second);
        }
        out.push_back(QubitSubset::from_unsorted(pick, n));
    }
    return out;
}

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::kWithinCluster:
            return "within_cluster";
        case Provenance::kCrossClusterProduct:
            return "cross_cluster_product";
        case Provenance::kNeighborhoodAveraged:
            return "neighborhood_averaged";
    }
    return "unknown";
}

MarginalNoiseMatrix marginal_noise(const CnModel &model, const QubitSubset &s) {
    if (s.empty() || s.size() > kMaxMarginalNoiseQubits) {
        throw std::invalid_argument("marginal_noise: subset must hold 1 to 4 qubits, got " + s.to_string());
    }
    if (s.total_qubits() != model.num_qubits()) {
        throw std::invalid_argument("marginal_noise: subset register size differs from the model");
    }
    std::vector<std::size_t> ids;
    for (auto q : s.qubits()) {
        ids.push_back(model.cluster_of(q));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    Provenance prov = ids.size() == 1 ? Provenance::kWithinCluster : Provenance::kCrossClusterProduct;
    struct Factor {
        QubitSubset a;
        QubitSubset n_in;
        std::vector<RMatrix> table;
    };
    std::vector<Factor> factors;
    for (auto id : ids) {
        const Cluster &cl = model.clusters()[id];
        if (!cl.neighborhood.minus(s).empty()) {
            prov = Provenance::kNeighborhoodAveraged;
        }
        factors.push_back({cl.qubits.intersected(s), cl.neighborhood.intersected(s), cluster_marginal(cl, s)});
    }
    std::size_t d = pow2(s.size());
    RMatrix m(d, d);
    for (std::size_t y = 0; y < d; ++y) {
        for (std::size_t x = 0; x < d; ++x) {
            double v = 1;
            for (const auto &f : factors) {
                v *= f.table[sub_index(y, s, f.n_in)](sub_index(x, s, f.a), sub_index(y, s, f.a));
            }
            m(x, y) = v;
        }
    }
    return MarginalNoiseMatrix{s, StochasticMatrix(m), prov};
}

RVector simplex_projection(const RVector &v) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0;
    double theta = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cum += u[i];
        double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0) {
            theta = t;
        }
    }
    return (v.array() - theta).max(0.0).matrix();
}

RVector mitigate_marginal(const RVector &p_noisy, const MarginalNoiseMatrix &lam, bool project_to_simplex) {
    const RMatrix &m = lam.matrix.entries();
    if (p_noisy.size() != m.cols()) {
        throw std::invalid_argument("mitigate_marginal: distribution size does not match the noise matrix");
    }
    Eigen::JacobiSVD<RMatrix> svd(m);
    const auto &sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    double cond = smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= kMaxConditionNumber)) {
        throw std::invalid_argument(
            "noise matrix on " + lam.subset.to_string() + " is singular or ill-conditioned (condition number " +
            std::to_string(cond) + ")");
    }
    RVector q = m.fullPivLu().solve(p_noisy);
    return project_to_simplex ? simplex_projection(q) : q;
}

CorrelationMatrix model_correlations(const CnModel &model, Metric metric, std::size_t threads) {
    std::size_t n = model.num_qubits();
    CorrelationMatrix out;
    out.num_qubits = n;
    out.metric = metric;
    out.kind = CorrelationKind::kClassical;
    out.values = RMatrix::Zero(n, n);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    parallel_for(
        pairs.size(),
        [&](std::size_t t) {
            auto [i, j] = pairs[t];
            StochasticMatrix lam = marginal_noise(model, QubitSubset({i, j}, n)).matrix;
            auto coeff = [&](std::size_t target) {
                return metric == Metric::kWc ? classical_corr_wc(lam, target) : classical_corr_ac(lam, target);
            };
            out.values(j, i) = coeff(0);
            out.values(i, j) = coeff(1);
        },
        threads);
    return out;
}

}  // namespace qdk
