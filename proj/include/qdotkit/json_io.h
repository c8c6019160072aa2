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

#ifndef QDOTKIT_JSON_IO_H
#define QDOTKIT_JSON_IO_H

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdotkit/bench.h"
#include "qdotkit/circuits.h"
#include "qdotkit/clustering.h"
#include "qdotkit/cn_model.h"
#include "qdotkit/correlations.h"
#include "qdotkit/marginals.h"
#include "qdotkit/povm.h"
#include "qdotkit/records.h"
#include "qdotkit/simulator.h"

namespace qdk {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; IoError on missing file or bad syntax.
Json read_json_file(const std::string &path);
/// Writes pretty-printed JSON with a trailing newline; IoError on failure.
void write_json_file(const std::string &path, const Json &j);
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

// Each *_from_json validates the decoded object and throws
// std::invalid_argument on a malformed document.

Json povm_to_json(const Povm &m);
Povm povm_from_json(const Json &j);

Json stochastic_to_json(const StochasticMatrix &m);
StochasticMatrix stochastic_from_json(const Json &j);

Json circuits_to_json(const CircuitCollection &c);
CircuitCollection circuits_from_json(const Json &j);

Json records_to_json(const ExperimentRecords &r);
ExperimentRecords records_from_json(const Json &j);

/// "lambda" holds the raw matrix-element estimates (uncovered columns are
/// zero), "h" the number of circuits per input setting and "shots" the pooled
/// shots per setting.
Json marginals_to_json(const MarginalTable &t);
MarginalTable marginals_from_json(const Json &j);

Json correlations_to_json(const CorrelationMatrix &c);
CorrelationMatrix correlations_from_json(const Json &j);

struct PartitionFile {
    Partition partition;
    double objective = 0;
    double alpha = 0;
    std::size_t c_max = 0;
    std::uint64_t seed = 0;
};
Json partition_to_json(const PartitionFile &p);
PartitionFile partition_from_json(const Json &j);

Json cn_model_to_json(const CnModel &m);
CnModel cn_model_from_json(const Json &j);

/// {"num_qubits", "blocks": [{"qubits": [...], "povm": POVM}]}
Json quantum_device_to_json(const QuantumDeviceSpec &d);
QuantumDeviceSpec quantum_device_from_json(const Json &j);

Json hamiltonians_to_json(const std::vector<Hamiltonian> &hs);
std::vector<Hamiltonian> hamiltonians_from_json(const Json &j);

}  // namespace qdk

#endif
