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

#include "qdotkit/qubit_subset.h"

#include <algorithm>
#include <stdexcept>

namespace qdk {

QubitSubset::QubitSubset(std::vector<std::size_t> qubits, std::size_t total_qubits)
    : qubits_(std::move(qubits)), total_(total_qubits) {
    for (std::size_t i = 0; i < qubits_.size(); ++i) {
        if (qubits_[i] >= total_) {
            throw std::invalid_argument(
                "qubit index " + std::to_string(qubits_[i]) + " out of range for " + std::to_string(total_) +
                " qubits");
        }
        if (i > 0 && qubits_[i] <= qubits_[i - 1]) {
            throw std::invalid_argument("qubit indices must be strictly increasing");
        }
    }
}

QubitSubset QubitSubset::from_unsorted(std::vector<std::size_t> qubits, std::size_t total_qubits) {
    std::sort(qubits.begin(), qubits.end());
    return QubitSubset(std::move(qubits), total_qubits);
}

QubitSubset QubitSubset::all(std::size_t total_qubits) {
    std::vector<std::size_t> q(total_qubits);
    for (std::size_t i = 0; i < total_qubits; ++i) {
        q[i] = i;
    }
    return QubitSubset(std::move(q), total_qubits);
}

bool QubitSubset::contains(std::size_t qubit) const {
    return std::binary_search(qubits_.begin(), qubits_.end(), qubit);
}

std::size_t QubitSubset::position_of(std::size_t qubit) const {
    auto it = std::lower_bound(qubits_.begin(), qubits_.end(), qubit);
    if (it == qubits_.end() || *it != qubit) {
        throw std::invalid_argument("qubit " + std::to_string(qubit) + " not in subset " + to_string());
    }
    return static_cast<std::size_t>(it - qubits_.begin());
}

QubitSubset QubitSubset::complement() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < total_; ++q) {
        if (!contains(q)) {
            out.push_back(q);
        }
    }
    return QubitSubset(std::move(out), total_);
}

bool QubitSubset::is_disjoint(const QubitSubset &other) const {
    return intersected(other).empty();
}

QubitSubset QubitSubset::united(const QubitSubset &other) const {
    std::vector<std::size_t> out;
    std::set_union(qubits_.begin(), qubits_.end(), other.qubits_.begin(), other.qubits_.end(), std::back_inserter(out));
    return QubitSubset(std::move(out), std::max(total_, other.total_));
}

QubitSubset QubitSubset::intersected(const QubitSubset &other) const {
    std::vector<std::size_t> out;
    std::set_intersection(
        qubits_.begin(), qubits_.end(), other.qubits_.begin(), other.qubits_.end(), std::back_inserter(out));
    return QubitSubset(std::move(out), std::max(total_, other.total_));
}

QubitSubset QubitSubset::minus(const QubitSubset &other) const {
    std::vector<std::size_t> out;
    std::set_difference(
        qubits_.begin(), qubits_.end(), other.qubits_.begin(), other.qubits_.end(), std::back_inserter(out));
    return QubitSubset(std::move(out), total_);
}

std::size_t QubitSubset::local_index(std::string_view bits) const {
    std::size_t idx = 0;
    for (std::size_t q : qubits_) {
        idx = (idx << 1) | (bits[q] != '0' ? 1u : 0u);
    }
    return idx;
}

std::size_t QubitSubset::local_index_of_full(std::size_t full_index) const {
    std::size_t idx = 0;
    for (std::size_t q : qubits_) {
        idx = (idx << 1) | ((full_index >> (total_ - 1 - q)) & 1u);
    }
    return idx;
}

std::string QubitSubset::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < qubits_.size(); ++i) {
        if (i) {
            s += ",";
        }
        s += std::to_string(qubits_[i]);
    }
    return s + "}";
}

std::vector<QubitSubset> all_subsets(std::size_t n, std::size_t k) {
    std::vector<QubitSubset> out;
    if (k > n) {
        return out;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        out.emplace_back(idx, n);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

std::string index_to_bits(std::size_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1u) {
            s[i] = '1';
        }
    }
    return s;
}

std::size_t bits_to_index(std::string_view bits) {
    std::size_t v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("invalid bit character '" + std::string(1, c) + "'");
        }
        v = (v << 1) | static_cast<std::size_t>(c - '0');
    }
    return v;
}

}  // namespace qdk
