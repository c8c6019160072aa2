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

#ifndef QDOTKIT_QUBIT_SUBSET_H
#define QDOTKIT_QUBIT_SUBSET_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qdk {

/// An ordered set of distinct qubit indices drawn from a register of
/// `total_qubits` qubits. Indices are stored strictly increasing.
///
/// Bit order convention, used everywhere in the library: the first qubit of a
/// subset is the most significant bit of a subset-local outcome index, and
/// qubit 0 is the leftmost character of a bitstring.
class QubitSubset {
   public:
    QubitSubset() = default;
    /// Throws std::invalid_argument unless `qubits` is strictly increasing and
    /// every entry is below `total_qubits`.
    QubitSubset(std::vector<std::size_t> qubits, std::size_t total_qubits);

    /// Sorts and validates arbitrary input (duplicates are rejected).
    static QubitSubset from_unsorted(std::vector<std::size_t> qubits, std::size_t total_qubits);
    static QubitSubset all(std::size_t total_qubits);

    const std::vector<std::size_t> &qubits() const { return qubits_; }
    std::size_t size() const { return qubits_.size(); }
    bool empty() const { return qubits_.empty(); }
    std::size_t total_qubits() const { return total_; }
    std::size_t operator[](std::size_t i) const { return qubits_[i]; }

    bool contains(std::size_t qubit) const;
    /// Position of `qubit` inside the subset; throws if absent.
    std::size_t position_of(std::size_t qubit) const;
    QubitSubset complement() const;
    bool is_disjoint(const QubitSubset &other) const;
    QubitSubset united(const QubitSubset &other) const;
    QubitSubset intersected(const QubitSubset &other) const;
    QubitSubset minus(const QubitSubset &other) const;

    /// Subset-local index of the bits of `bits` restricted to this subset.
    /// Characters other than '0' are read as 1 for binary strings.
    std::size_t local_index(std::string_view bits) const;
    /// Same as local_index but for an index into a full register given as an
    /// integer with qubit 0 as the most significant of `total_qubits` bits.
    std::size_t local_index_of_full(std::size_t full_index) const;

    std::string to_string() const;

    auto operator<=>(const QubitSubset &) const = default;

   private:
    std::vector<std::size_t> qubits_;
    std::size_t total_ = 0;
};

/// All size-k subsets of [0, n) in lexicographic order.
std::vector<QubitSubset> all_subsets(std::size_t n, std::size_t k);

/// Bitstring of `value` over `width` bits, most significant first.
std::string index_to_bits(std::size_t value, std::size_t width);
/// Inverse of index_to_bits. Throws on characters other than '0'/'1'.
std::size_t bits_to_index(std::string_view bits);

}  // namespace qdk

#endif
