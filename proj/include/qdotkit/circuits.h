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

#ifndef QDOTKIT_CIRCUITS_H
#define QDOTKIT_CIRCUITS_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qdotkit/povm.h"

namespace qdk {

/// DDOT prepares computational basis states only (symbols 0, 1). QDOT prepares
/// Pauli eigenstates, symbols 0..5 = Z+, Z-, X+, X-, Y+, Y-.
enum class Protocol { kDdot, kQdot };

std::string protocol_name(Protocol p);
Protocol parse_protocol(std::string_view name);
inline std::size_t alphabet_size(Protocol p) { return p == Protocol::kDdot ? 2 : 6; }

/// A collection of single-layer input-state settings, one string per circuit,
/// one symbol character per qubit.
struct CircuitCollection {
    Protocol protocol = Protocol::kDdot;
    std::size_t num_qubits = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> circuits;

    /// Throws std::invalid_argument on a malformed circuit string.
    void validate() const;
};

/// Draws `num_circuits` settings with i.i.d. uniform symbols. Circuit i uses
/// its own generator stream, so the output does not depend on thread count.
CircuitCollection generate_collection(
    Protocol protocol, std::size_t num_qubits, std::size_t num_circuits, std::uint64_t seed, std::size_t threads = 0);

struct ComplexityQuery {
    Protocol protocol = Protocol::kDdot;
    std::size_t k = 1;
    std::size_t num_qubits = 1;
    double epsilon = 0.1;
    double delta = 0.01;
};

/// Circuits needed so that every k-local matrix element is within epsilon
/// for all subsets with probability at least 1 - delta:
///   b^k / (1 - exp(-2 eps^2)) * [(k+1) log 2 + log C(N,k) + log(1/delta)]
/// with b = 6 (QDOT) or 2 (DDOT), rounded up.
std::uint64_t required_circuits_matrix_elements(const ComplexityQuery &q);
double required_circuits_matrix_elements_exact(const ComplexityQuery &q);

/// Circuits needed for the least-squares Choi estimate of every k-local
/// reduced measurement to be within epsilon in Hilbert-Schmidt norm:
///   (6^k / eps^2)(64/3)[log C(N,k) + 2k log 2 + log(1/delta)], rounded up.
/// QDOT only.
std::uint64_t required_circuits_choi(const ComplexityQuery &q);
double required_circuits_choi_exact(const ComplexityQuery &q);

/// Single-qubit state prepared by a setting symbol ('0'..'5' or 0..5).
DensityMatrix setting_to_state(int symbol);
DensityMatrix setting_to_state(char symbol);

/// Product state prepared on `subset` by a full setting string.
DensityMatrix setting_state_on(std::string_view setting, const QubitSubset &subset);

/// One whitespace-separated gate label per qubit, e.g. "I X Y90 Y-90 X-90 X90".
std::string setting_to_gate_line(std::string_view setting);

}  // namespace qdk

#endif
