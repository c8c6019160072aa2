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

#ifndef QDOTKIT_RECORDS_H
#define QDOTKIT_RECORDS_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdotkit/circuits.h"

namespace qdk {

/// Outcome counts for one executed circuit.
struct Record {
    std::string setting;
    std::uint64_t shots = 0;
    /// Outcome bitstring (qubit 0 leftmost) -> count.
    std::map<std::string, std::uint64_t> counts;
};

/// Results of running a circuit collection on a device.
struct ExperimentRecords {
    Protocol protocol = Protocol::kDdot;
    std::size_t num_qubits = 0;
    std::vector<Record> records;

    /// Throws std::invalid_argument when counts do not sum to shots or
    /// strings have the wrong length.
    void validate() const;
};

}  // namespace qdk

#endif
