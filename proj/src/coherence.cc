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

#include "qdotkit/coherence.h"

#include <stdexcept>

#include "qdotkit/circuits.h"
#include "qdotkit/distances.h"
#include "qdotkit/error.h"
#include "qdotkit/marginals.h"

namespace qdk {

namespace {

DensityMatrix product_state(const std::string &setting) {
    return setting_state_on(setting, QubitSubset::all(setting.size()));
}

void check_witness(const std::string &p, const std::string &q) {
    if (p.empty() || p.size() != q.size()) {
        throw std::invalid_argument("witness states must cover the same non-empty set of qubits");
    }
    for (char c : p + q) {
        if (c < '2' || c > '5') {
            throw std::invalid_argument("witness states must be products of X/Y eigenstates (symbols 2-5)");
        }
    }
    if (p == q) {
        throw std::invalid_argument("witness states must differ");
    }
}

}  // namespace

double coherence_strength_ac(const Povm &m) {
    if (m.dim() > 8) {
        throw std::invalid_argument("coherence_strength_ac: dimension above 8");
    }
    return ac_distance(m, m.dephased());
}

double witness_delta_norm(const std::string &p_setting, const std::string &q_setting) {
    return (product_state(p_setting).matrix() - product_state(q_setting).matrix()).norm();
}

double cs_lower_bound_exact(
    const RVector &prob_p, const RVector &prob_q, const std::string &p_setting, const std::string &q_setting) {
    check_witness(p_setting, q_setting);
    double d = static_cast<double>(pow2(p_setting.size()));
    if (static_cast<double>(prob_p.size()) != d || static_cast<double>(prob_q.size()) != d) {
        throw std::invalid_argument("cs_lower_bound: distributions must have 2^k outcomes");
    }
    return tvd(prob_p, prob_q) / (d * witness_delta_norm(p_setting, q_setting));
}

CsBound cs_lower_bound(
    const RVector &prob_p, std::uint64_t shots_p, const RVector &prob_q, std::uint64_t shots_q,
    const std::string &p_setting, const std::string &q_setting, double p_err) {
    if (shots_p == 0 || shots_q == 0) {
        throw std::invalid_argument("cs_lower_bound: zero shots");
    }
    double bound = cs_lower_bound_exact(prob_p, prob_q, p_setting, q_setting);
    std::size_t d = pow2(p_setting.size());
    double eps_p = tvd_confidence(shots_p, d, p_err).epsilon_star;
    double eps_q = tvd_confidence(shots_q, d, p_err).epsilon_star;
    return CsBound{bound, (eps_p + eps_q) / static_cast<double>(d)};
}

std::vector<std::pair<std::string, std::string>> witness_pairs(std::size_t k) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t others = 1;
    for (std::size_t i = 1; i < k; ++i) {
        others *= 4;
    }
    for (std::size_t flip = 0; flip < k; ++flip) {
        for (char basis : {'2', '4'}) {
            for (std::size_t o = 0; o < others; ++o) {
                std::string p(k, '2');
                std::size_t rest = o;
                for (std::size_t i = 0; i < k; ++i) {
                    if (i == flip) {
                        continue;
                    }
                    p[i] = static_cast<char>('2' + rest % 4);
                    rest /= 4;
                }
                std::string q = p;
                p[flip] = basis;
                q[flip] = static_cast<char>(basis + 1);
                out.emplace_back(p, q);
            }
        }
    }
    return out;
}

CoherenceReport scan_coherence_bound(const ExperimentRecords &records, const QubitSubset &subset, double p_err) {
    if (records.protocol != Protocol::kQdot) {
        throw std::invalid_argument("coherence bounds need QDOT records");
    }
    std::size_t k = subset.size();
    std::size_t d = pow2(k);
    auto pooled = [&](const std::string &state, std::uint64_t &shots) {
        RVector counts = RVector::Zero(d);
        shots = 0;
        for (const auto &r : records.records) {
            bool match = true;
            for (std::size_t i = 0; i < k && match; ++i) {
                match = r.setting[subset[i]] == state[i];
            }
            if (!match) {
                continue;
            }
            shots += r.shots;
            for (const auto &[bits, n] : r.counts) {
                counts(subset.local_index(bits)) += static_cast<double>(n);
            }
        }
        return shots ? RVector(counts / static_cast<double>(shots)) : counts;
    };
    CoherenceReport best{subset, std::nullopt, -1, 0, "", ""};
    for (const auto &[p, q] : witness_pairs(k)) {
        std::uint64_t sp = 0;
        std::uint64_t sq = 0;
        RVector pp = pooled(p, sp);
        RVector pq = pooled(q, sq);
        if (sp == 0 || sq == 0) {
            continue;
        }
        CsBound b = cs_lower_bound(pp, sp, pq, sq, p, q, p_err);
        if (b.bound > best.cs_lower_bound) {
            best.cs_lower_bound = b.bound;
            best.bound_error = b.error;
            best.witness_p = p;
            best.witness_q = q;
        }
    }
    if (best.cs_lower_bound < 0) {
        throw CoverageError("no witness state pair was prepared on subset " + subset.to_string());
    }
    return best;
}

double cs_tensor_upper_bound(const std::vector<CoherenceReport> &block_reports) {
    double s = 0;
    for (std::size_t i = 0; i < block_reports.size(); ++i) {
        const auto &r = block_reports[i];
        if (!r.cs_ac) {
            throw std::invalid_argument("block report " + r.subset.to_string() + " lacks a coherence strength");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!block_reports[j].subset.is_disjoint(r.subset)) {
                throw std::invalid_argument("coherence blocks must be disjoint");
            }
        }
        s += *r.cs_ac;
    }
    return s;
}

}  // namespace qdk
