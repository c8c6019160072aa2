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

#include "qdotkit/simulator.h"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "qdotkit/parallel.h"
#include "qdotkit/rng.h"

namespace qdk {

namespace {

constexpr std::uint64_t kShotStreamTag = 0x53484f54;  // "SHOT"

/// Cumulative distribution over a cluster's output index.
struct Sampler {
    const QubitSubset *qubits = nullptr;
    std::vector<double> cdf;

    std::size_t draw(double u) const {
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    }
};

std::vector<double> cumulative(const RVector &p) {
    std::vector<double> c(static_cast<std::size_t>(p.size()));
    double acc = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        acc += p(i);
        c[static_cast<std::size_t>(i)] = acc;
    }
    return c;
}

void write_bits(std::string &out, const QubitSubset &qubits, std::size_t local) {
    std::size_t k = qubits.size();
    for (std::size_t i = 0; i < k; ++i) {
        out[qubits[i]] = ((local >> (k - 1 - i)) & 1u) ? '1' : '0';
    }
}

Record sample_record(
    const std::string &setting, const std::vector<Sampler> &samplers, std::size_t num_qubits, std::uint64_t shots,
    std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::unordered_map<std::string, std::uint64_t> acc;
    std::string outcome(num_qubits, '0');
    for (std::uint64_t s = 0; s < shots; ++s) {
        for (const auto &sm : samplers) {
            write_bits(outcome, *sm.qubits, sm.draw(unif(rng)));
        }
        ++acc[outcome];
    }
    Record r{setting, shots, {}};
    for (auto &[k, v] : acc) {
        r.counts.emplace(k, v);
    }
    return r;
}

}  // namespace

void QuantumDeviceSpec::validate() const {
    std::vector<bool> seen(num_qubits, false);
    for (const auto &b : blocks) {
        if (b.qubits.size() > 3) {
            throw std::invalid_argument("device block " + b.qubits.to_string() + " exceeds 3 qubits");
        }
        if (b.povm.dim() != pow2(b.qubits.size()) || b.povm.num_outcomes() != b.povm.dim()) {
            throw std::invalid_argument("device block " + b.qubits.to_string() + " has a mismatched POVM");
        }
        for (std::size_t q : b.qubits.qubits()) {
            if (q >= num_qubits || seen[q]) {
                throw std::invalid_argument("device blocks overlap or exceed the register");
            }
            seen[q] = true;
        }
    }
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (!seen[q]) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " is not covered by a device block");
        }
    }
}

ExperimentRecords sample_cn(
    const CnModel &model, const CircuitCollection &circuits, std::uint64_t shots, std::uint64_t seed,
    std::size_t threads) {
    if (circuits.protocol != Protocol::kDdot) {
        throw std::invalid_argument("CN model defines classical action only; use sample_quantum");
    }
    if (circuits.num_qubits != model.num_qubits()) {
        throw std::invalid_argument("sample_cn: model and circuits disagree on the number of qubits");
    }
    circuits.validate();
    ExperimentRecords out{Protocol::kDdot, model.num_qubits(), std::vector<Record>(circuits.circuits.size())};
    parallel_for(
        circuits.circuits.size(),
        [&](std::size_t i) {
            const std::string &setting = circuits.circuits[i];
            std::vector<Sampler> samplers;
            for (const auto &cl : model.clusters()) {
                const StochasticMatrix &m = cl.matrix_for(setting);
                std::size_t y = cl.qubits.local_index(setting);
                samplers.push_back(Sampler{&cl.qubits, cumulative(m.entries().col(static_cast<Eigen::Index>(y)))});
            }
            auto rng = make_stream(seed, {kShotStreamTag, i});
            out.records[i] = sample_record(setting, samplers, model.num_qubits(), shots, rng);
        },
        threads);
    return out;
}

ExperimentRecords sample_quantum(
    const QuantumDeviceSpec &spec, const CircuitCollection &circuits, std::uint64_t shots, std::uint64_t seed,
    std::size_t threads) {
    spec.validate();
    if (circuits.num_qubits != spec.num_qubits) {
        throw std::invalid_argument("sample_quantum: device and circuits disagree on the number of qubits");
    }
    circuits.validate();
    ExperimentRecords out{circuits.protocol, spec.num_qubits, std::vector<Record>(circuits.circuits.size())};
    parallel_for(
        circuits.circuits.size(),
        [&](std::size_t i) {
            const std::string &setting = circuits.circuits[i];
            std::vector<Sampler> samplers;
            for (const auto &b : spec.blocks) {
                RVector p = born_probabilities(b.povm, setting_state_on(setting, b.qubits));
                samplers.push_back(Sampler{&b.qubits, cumulative(p)});
            }
            auto rng = make_stream(seed, {kShotStreamTag, i});
            out.records[i] = sample_record(setting, samplers, spec.num_qubits, shots, rng);
        },
        threads);
    return out;
}

}  // namespace qdk
