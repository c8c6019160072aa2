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

#include "qdotkit/records.h"

#include <stdexcept>
#include <string>

namespace qdk {

void ExperimentRecords::validate() const {
    char max_symbol = static_cast<char>('0' + alphabet_size(protocol) - 1);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Record &r = records[i];
        if (r.setting.size() != num_qubits) {
            throw std::invalid_argument("record " + std::to_string(i) + ": setting has wrong length");
        }
        for (char c : r.setting) {
            if (c < '0' || c > max_symbol) {
                throw std::invalid_argument("record " + std::to_string(i) + ": invalid setting symbol");
            }
        }
        std::uint64_t total = 0;
        for (const auto &[bits, n] : r.counts) {
            if (bits.size() != num_qubits || bits.find_first_not_of("01") != std::string::npos) {
                throw std::invalid_argument("record " + std::to_string(i) + ": malformed outcome '" + bits + "'");
            }
            total += n;
        }
        if (total != r.shots) {
            throw std::invalid_argument("record " + std::to_string(i) + ": counts do not sum to shots");
        }
    }
}

}  // namespace qdk
