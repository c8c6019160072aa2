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

#include "qdotkit/bench.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qdotkit/circuits.h"
#include "qdotkit/parallel.h"
#include "qdotkit/reconstruct.h"
#include "qdotkit/rng.h"
#include "qdotkit/simulator.h"

namespace qdk {

namespace {

constexpr std::uint64_t kHamTag = 0x48414d49;

struct Term {
    QubitSubset subset;
    double coeff;
};

std::vector<Term> terms_of(const Hamiltonian &h) {
    std::vector<Term> out;
    for (const auto &[q, v] : h.h) {
        out.push_back({QubitSubset({q}, h.num_qubits), v});
    }
    for (const auto &[e, v] : h.j) {
        out.push_back({QubitSubset({e.first, e.second}, h.num_qubits), v});
    }
    return out;
}

// <Z...Z> over the qubits of `on`, from a (quasi-)distribution over `set`.
double parity_expectation(const RVector &q, const QubitSubset &set, const QubitSubset &on) {
    std::size_t mask = 0;
    for (auto x : on.qubits()) {
        mask |= std::size_t{1} << (set.size() - 1 - set.position_of(x));
    }
    double e = 0;
    for (Eigen::Index x = 0; x < q.size(); ++x) {
        e += (std::popcount(static_cast<std::size_t>(x) & mask) % 2 ? -1.0 : 1.0) * q(x);
    }
    return e;
}

RVector marginal_from_counts(const std::map<std::string, std::uint64_t> &counts, const QubitSubset &s, double total) {
    RVector p = RVector::Zero(static_cast<Eigen::Index>(pow2(s.size())));
    for (const auto &[bits, n] : counts) {
        p(static_cast<Eigen::Index>(s.local_index(bits))) += static_cast<double>(n);
    }
    return p / total;
}

QubitSubset cluster_cover(const CnModel &model, const QubitSubset &s) {
    std::vector<std::size_t> qs;
    for (auto q : s.qubits()) {
        const auto &c = model.clusters()[model.cluster_of(q)].qubits.qubits();
        qs.insert(qs.end(), c.begin(), c.end());
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return QubitSubset(qs, model.num_qubits());
}

// Clusters touching s, or s itself when they hold more than four qubits.
QubitSubset term_support(const CnModel &model, const QubitSubset &s) {
    QubitSubset cover = cluster_cover(model, s);
    return cover.size() <= kMaxMarginalNoiseQubits ? cover : s;
}

}  // namespace

void Hamiltonian::validate() const {
    for (const auto &[q, v] : h) {
        if (q >= num_qubits) {
            throw std::invalid_argument("field index " + std::to_string(q) + " out of range");
        }
    }
    for (const auto &[e, v] : j) {
        if (e.first >= e.second || e.second >= num_qubits) {
            throw std::invalid_argument(
                "coupling (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") needs i < j < N");
        }
    }
}

double Hamiltonian::energy(std::string_view bits) const {
    if (bits.size() != num_qubits) {
        throw std::invalid_argument("bitstring length differs from the Hamiltonian size");
    }
    auto s = [&](std::size_t q) { return bits[q] == '0' ? 1.0 : -1.0; };
    double e = 0;
    for (const auto &[q, v] : h) {
        e += v * s(q);
    }
    for (const auto &[p, v] : j) {
        e += v * s(p.first) * s(p.second);
    }
    return e;
}

Hamiltonian Hamiltonian::scaled(double c) const {
    Hamiltonian out = *this;
    for (auto &[q, v] : out.h) {
        v *= c;
    }
    for (auto &[p, v] : out.j) {
        v *= c;
    }
    return out;
}

std::vector<Hamiltonian> random_hamiltonians(
    std::size_t n_instances, std::size_t num_qubits, std::uint64_t seed, const HamiltonianOptions &opts) {
    if (num_qubits == 0) {
        throw std::invalid_argument("random_hamiltonians: zero qubits");
    }
    if (!(opts.edge_density >= 0 && opts.edge_density <= 1)) {
        throw std::invalid_argument("edge_density must lie in [0, 1]");
    }
    if (opts.edges) {
        for (auto [a, b] : *opts.edges) {
            if (a == b || a >= num_qubits || b >= num_qubits) {
                throw std::invalid_argument("coupling graph edge out of range");
            }
        }
    }
    std::vector<Hamiltonian> out(n_instances);
    for (std::size_t i = 0; i < n_instances; ++i) {
        auto rng = make_stream(seed, {kHamTag, i});
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        std::bernoulli_distribution keep(opts.edge_density);
        Hamiltonian &h = out[i];
        h.num_qubits = num_qubits;
        for (std::size_t q = 0; q < num_qubits; ++q) {
            h.h[q] = coeff(rng);
        }
        if (opts.edges) {
            for (auto [a, b] : *opts.edges) {
                h.j[{std::min(a, b), std::max(a, b)}] = coeff(rng);
            }
        } else {
            for (std::size_t a = 0; a < num_qubits; ++a) {
                for (std::size_t b = a + 1; b < num_qubits; ++b) {
                    if (keep(rng)) {
                        h.j[{a, b}] = coeff(rng);
                    }
                }
            }
        }
    }
    return out;
}

GroundState ground_state(const Hamiltonian &h) {
    h.validate();
    std::size_t n = h.num_qubits;
    if (n > kMaxExhaustiveQubits) {
        throw std::invalid_argument(
            "ground_state: " + std::to_string(n) + " qubits exceed the exhaustive limit of 24; supply the state");
    }
    std::vector<double> field(n, 0.0);
    for (const auto &[q, v] : h.h) {
        field[q] = v;
    }
    std::vector<std::tuple<std::size_t, std::size_t, double>> couplings;
    for (const auto &[p, v] : h.j) {
        couplings.emplace_back(n - 1 - p.first, n - 1 - p.second, v);
    }
    std::size_t best = 0;
    double best_e = 0;
    for (std::size_t x = 0; x < pow2(n); ++x) {
        double e = 0;
        for (std::size_t q = 0; q < n; ++q) {
            e += ((x >> (n - 1 - q)) & 1U) ? -field[q] : field[q];
        }
        for (const auto &[a, b, v] : couplings) {
            e += (((x >> a) ^ (x >> b)) & 1U) ? -v : v;
        }
        if (x == 0 || e < best_e) {
            best = x;
            best_e = e;
        }
    }
    return GroundState{index_to_bits(best, n), best_e};
}

std::string mitigation_mode_name(MitigationMode m) {
    return m == MitigationMode::kMarginal ? "marginal" : "cluster-inverse";
}

MitigationMode parse_mitigation_mode(const std::string &name) {
    if (name == "marginal") {
        return MitigationMode::kMarginal;
    }
    if (name == "cluster-inverse") {
        return MitigationMode::kClusterInverse;
    }
    throw std::invalid_argument("unknown mitigation mode '" + name + "' (expected marginal or cluster-inverse)");
}

double energy_from_counts(
    const Hamiltonian &h, const std::map<std::string, std::uint64_t> &counts, const CnModel *mitigator,
    MitigationMode mode) {
    h.validate();
    double total = 0;
    for (const auto &[bits, n] : counts) {
        if (bits.size() != h.num_qubits) {
            throw std::invalid_argument("count key '" + bits + "' has the wrong length");
        }
        total += static_cast<double>(n);
    }
    if (total == 0) {
        throw std::invalid_argument("energy_from_counts: empty counts");
    }
    if (mitigator == nullptr) {
        double e = 0;
        for (const auto &[bits, n] : counts) {
            e += static_cast<double>(n) * h.energy(bits);
        }
        return e / total;
    }
    if (mitigator->num_qubits() != h.num_qubits) {
        throw std::invalid_argument("mitigation model and Hamiltonian disagree on the number of qubits");
    }
    double e = 0;
    for (const auto &t : terms_of(h)) {
        try {
            QubitSubset on = mode == MitigationMode::kClusterInverse ? term_support(*mitigator, t.subset) : t.subset;
            RVector q = mitigate_marginal(marginal_from_counts(counts, on, total), marginal_noise(*mitigator, on));
            e += t.coeff * parity_expectation(q, on, t.subset);
        } catch (const std::invalid_argument &err) {
            throw std::invalid_argument("term on " + t.subset.to_string() + ": " + err.what());
        }
    }
    return e;
}

double energy_from_distribution(const Hamiltonian &h, const std::map<std::string, double> &probs) {
    double e = 0;
    for (const auto &[bits, p] : probs) {
        e += p * h.energy(bits);
    }
    return e;
}

double predict_energy(const Hamiltonian &h, std::string_view ground, const CnModel &model, MitigationMode mode) {
    h.validate();
    if (ground.size() != h.num_qubits || model.num_qubits() != h.num_qubits) {
        throw std::invalid_argument("predict_energy: sizes of Hamiltonian, state and model differ");
    }
    double e = 0;
    for (const auto &t : terms_of(h)) {
        QubitSubset on = mode == MitigationMode::kClusterInverse ? term_support(model, t.subset) : t.subset;
        MarginalNoiseMatrix lam = marginal_noise(model, on);
        RVector col = lam.matrix.entries().col(static_cast<Eigen::Index>(on.local_index(ground)));
        e += t.coeff * parity_expectation(col, on, t.subset);
    }
    return e;
}

double median(std::vector<double> v) {
    if (v.empty()) {
        throw std::invalid_argument("median of an empty list");
    }
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

BenchReport run_benchmark(
    const BenchModels &models, const std::vector<Hamiltonian> &hamiltonians, const CnModel &device,
    std::uint64_t shots, std::uint64_t seed, MitigationMode mode, std::size_t threads) {
    if (hamiltonians.empty()) {
        throw std::invalid_argument("run_benchmark: no Hamiltonians");
    }
    std::size_t n = device.num_qubits();
    if (models.cn.num_qubits() != n || models.tpn.num_qubits() != n) {
        throw std::invalid_argument("run_benchmark: models and device disagree on the number of qubits");
    }
    for (const auto &h : hamiltonians) {
        if (h.num_qubits != n) {
            throw std::invalid_argument("run_benchmark: Hamiltonian size differs from the device");
        }
    }
    std::size_t m = hamiltonians.size();
    BenchReport rep;
    rep.num_qubits = n;
    rep.shots = shots;
    rep.rows.resize(m);
    parallel_for(
        m,
        [&](std::size_t i) {
            GroundState g = ground_state(hamiltonians[i]);
            rep.rows[i].ground = g.bits;
            rep.rows[i].e_th = g.energy;
        },
        threads);
    CircuitCollection prepared{Protocol::kDdot, n, seed, {}};
    for (const auto &r : rep.rows) {
        prepared.circuits.push_back(r.ground);
    }
    ExperimentRecords recs = sample_cn(device, prepared, shots, seed, threads);
    double nn = static_cast<double>(n);
    parallel_for(
        m,
        [&](std::size_t i) {
            const Hamiltonian &h = hamiltonians[i];
            const auto &counts = recs.records[i].counts;
            BenchRow &r = rep.rows[i];
            r.e_est = energy_from_counts(h, counts);
            r.e_pred = predict_energy(h, r.ground, models.cn, mode);
            r.e_mit_cn = energy_from_counts(h, counts, &models.cn, mode);
            r.e_mit_tpn = energy_from_counts(h, counts, &models.tpn, mode);
            r.de_pred = std::abs(r.e_pred - r.e_est) / nn;
            r.de_est = std::abs(r.e_est - r.e_th) / nn;
            r.de_mit_cn = std::abs(r.e_mit_cn - r.e_th) / nn;
            r.de_mit_tpn = std::abs(r.e_mit_tpn - r.e_th) / nn;
        },
        threads);
    auto col = [&](double BenchRow::*f) {
        std::vector<double> v;
        for (const auto &r : rep.rows) {
            v.push_back(r.*f);
        }
        return median(v);
    };
    rep.median_de_pred = col(&BenchRow::de_pred);
    rep.median_de_est = col(&BenchRow::de_est);
    rep.median_de_mit_cn = col(&BenchRow::de_mit_cn);
    rep.median_de_mit_tpn = col(&BenchRow::de_mit_tpn);
    return rep;
}

std::string report_to_csv(const BenchReport &report) {
    std::ostringstream os;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    os << "instance,ground,E_TH,E_EST,E_PRED,E_MIT_cn,E_MIT_tpn,dE_pred,dE_est,dE_mit_cn,dE_mit_tpn\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const BenchRow &r = report.rows[i];
        os << i << ',' << r.ground << ',' << num(r.e_th) << ',' << num(r.e_est) << ',' << num(r.e_pred) << ','
           << num(r.e_mit_cn) << ',' << num(r.e_mit_tpn) << ',' << num(r.de_pred) << ',' << num(r.de_est) << ','
           << num(r.de_mit_cn) << ',' << num(r.de_mit_tpn) << '\n';
    }
    os << "# num_qubits," << report.num_qubits << '\n';
    os << "# shots," << report.shots << '\n';
    os << "# median_dE_pred," << num(report.median_de_pred) << '\n';
    os << "# median_dE_est," << num(report.median_de_est) << '\n';
    os << "# median_dE_mit_cn," << num(report.median_de_mit_cn) << '\n';
    os << "# median_dE_mit_tpn," << num(report.median_de_mit_tpn) << '\n';
    return os.str();
}

}  // namespace qdk
