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

#ifndef QDOTKIT_SIMULATOR_H
#define QDOTKIT_SIMULATOR_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qdotkit/circuits.h"
#include "qdotkit/cn_model.h"
#include "qdotkit/povm.h"
#include "qdotkit/records.h"

namespace qdk {

/// A device whose global POVM is the tensor product of small block POVMs.
struct QuantumDeviceSpec {
    struct Block {
        QubitSubset qubits;
        Povm povm;
    };
    std::size_t num_qubits = 0;
    std::vector<Block> blocks;

    /// Blocks must be disjoint, cover every qubit, hold at most 3 qubits, and
    /// carry a POVM with one outcome per block bitstring.
    void validate() const;
};

/// Samples `shots` noisy outcomes per DDOT circuit from a CN model. Each
/// cluster draws its output bits from column y_C of the matrix selected by
/// the neighborhood bits of the setting. Circuit i uses its own generator
/// stream keyed by (seed, i).
ExperimentRecords sample_cn(
    const CnModel &model, const CircuitCollection &circuits, std::uint64_t shots, std::uint64_t seed,
    std::size_t threads = 0);

/// Samples outcomes of a product-POVM device on DDOT or QDOT settings via the
/// Born rule, block by block.
ExperimentRecords sample_quantum(
    const QuantumDeviceSpec &spec, const CircuitCollection &circuits, std::uint64_t shots, std::uint64_t seed,
    std::size_t threads = 0);

}  // namespace qdk

#endif
