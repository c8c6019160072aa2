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

#include "qdotkit/circuits.h"

#include <cmath>
#include <stdexcept>

#include "qdotkit/parallel.h"
#include "qdotkit/rng.h"

namespace qdk {

namespace {

constexpr std::uint64_t kCircuitStreamTag = 0x43495243;  // "CIRC"

double log_binomial(std::size_t n, std::size_t k) {
    double s = 0;
    for (std::size_t i = 0; i < k; ++i) {
        s += std::log(static_cast<double>(n - i)) - std::log(static_cast<double>(i + 1));
    }
    return s;
}

void check_query(const ComplexityQuery &q) {
    if (q.k == 0 || q.k > q.num_qubits) {
        throw std::invalid_argument("complexity query needs 1 <= k <= N");
    }
    if (q.k > 12) {
        throw std::invalid_argument("complexity query: k > 12 overflows the circuit count");
    }
    if (!(q.epsilon > 0 && q.epsilon <= 1)) {
        throw std::invalid_argument("complexity query needs 0 < epsilon <= 1");
    }
    if (!(q.delta > 0 && q.delta < 1)) {
        throw std::invalid_argument("complexity query needs 0 < delta < 1");
    }
}

std::uint64_t checked_ceil(double v) {
    if (!(v < 1.8e19)) {
        throw std::overflow_error("circuit count overflows 64 bits");
    }
    return static_cast<std::uint64_t>(std::ceil(v));
}

}  // namespace

std::string protocol_name(Protocol p) {
    return p == Protocol::kDdot ? "ddot" : "qdot";
}

Protocol parse_protocol(std::string_view name) {
    if (name == "ddot" || name == "DDOT") {
        return Protocol::kDdot;
    }
    if (name == "qdot" || name == "QDOT") {
        return Protocol::kQdot;
    }
    throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

void CircuitCollection::validate() const {
    char max_symbol = static_cast<char>('0' + alphabet_size(protocol) - 1);
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        const auto &c = circuits[i];
        if (c.size() != num_qubits) {
            throw std::invalid_argument("circuit " + std::to_string(i) + " has wrong length");
        }
        for (char s : c) {
            if (s < '0' || s > max_symbol) {
                throw std::invalid_argument("circuit " + std::to_string(i) + " has invalid symbol '" + s + "'");
            }
        }
    }
}

CircuitCollection generate_collection(
    Protocol protocol, std::size_t num_qubits, std::size_t num_circuits, std::uint64_t seed, std::size_t threads) {
    if (num_circuits == 0) {
        throw std::invalid_argument("generate_collection needs at least one circuit");
    }
    if (num_qubits == 0) {
        throw std::invalid_argument("generate_collection needs at least one qubit");
    }
    CircuitCollection out{protocol, num_qubits, seed, std::vector<std::string>(num_circuits)};
    int top = static_cast<int>(alphabet_size(protocol)) - 1;
    parallel_for(
        num_circuits,
        [&](std::size_t i) {
            auto rng = make_stream(seed, {kCircuitStreamTag, i});
            std::uniform_int_distribution<int> symbol(0, top);
            std::string s(num_qubits, '0');
            for (auto &ch : s) {
                ch = static_cast<char>('0' + symbol(rng));
            }
            out.circuits[i] = std::move(s);
        },
        threads);
    return out;
}

double required_circuits_matrix_elements_exact(const ComplexityQuery &q) {
    check_query(q);
    double base = q.protocol == Protocol::kDdot ? 2.0 : 6.0;
    double k = static_cast<double>(q.k);
    double bracket = (k + 1) * std::log(2.0) + log_binomial(q.num_qubits, q.k) + std::log(1 / q.delta);
    return std::pow(base, k) / (1 - std::exp(-2 * q.epsilon * q.epsilon)) * bracket;
}

std::uint64_t required_circuits_matrix_elements(const ComplexityQuery &q) {
    return checked_ceil(required_circuits_matrix_elements_exact(q));
}

double required_circuits_choi_exact(const ComplexityQuery &q) {
    if (q.protocol != Protocol::kQdot) {
        throw std::invalid_argument(
            "Choi reconstruction needs informationally complete inputs; use the QDOT protocol");
    }
    check_query(q);
    double k = static_cast<double>(q.k);
    double bracket = log_binomial(q.num_qubits, q.k) + 2 * k * std::log(2.0) + std::log(1 / q.delta);
    return std::pow(6.0, k) / (q.epsilon * q.epsilon) * (64.0 / 3.0) * bracket;
}

std::uint64_t required_circuits_choi(const ComplexityQuery &q) {
    return checked_ceil(required_circuits_choi_exact(q));
}

DensityMatrix setting_to_state(int symbol) {
    const double h = 0.5;
    CMatrix id = CMatrix::Identity(2, 2);
    switch (symbol) {
        case 0:
            return DensityMatrix::basis_state(2, 0);
        case 1:
            return DensityMatrix::basis_state(2, 1);
        case 2:
            return DensityMatrix(h * (id + pauli_x()));
        case 3:
            return DensityMatrix(h * (id - pauli_x()));
        case 4:
            return DensityMatrix(h * (id + pauli_y()));
        case 5:
            return DensityMatrix(h * (id - pauli_y()));
        default:
            throw std::invalid_argument("invalid setting symbol " + std::to_string(symbol));
    }
}

DensityMatrix setting_to_state(char symbol) {
    if (symbol < '0' || symbol > '5') {
        throw std::invalid_argument(std::string("invalid setting symbol '") + symbol + "'");
    }
    return setting_to_state(static_cast<int>(symbol - '0'));
}

DensityMatrix setting_state_on(std::string_view setting, const QubitSubset &subset) {
    if (subset.empty()) {
        throw std::invalid_argument("setting_state_on: empty subset");
    }
    DensityMatrix rho = setting_to_state(setting[subset[0]]);
    for (std::size_t i = 1; i < subset.size(); ++i) {
        rho = tensor(rho, setting_to_state(setting[subset[i]]));
    }
    return rho;
}

std::string setting_to_gate_line(std::string_view setting) {
    static const char *kLabels[] = {"I", "X", "Y90", "Y-90", "X-90", "X90"};
    std::string line;
    for (std::size_t i = 0; i < setting.size(); ++i) {
        int s = setting[i] - '0';
        if (s < 0 || s > 5) {
            throw std::invalid_argument("invalid setting symbol in gate export");
        }
        if (i) {
            line += ' ';
        }
        line += kLabels[s];
    }
    return line;
}

}  // namespace qdk
