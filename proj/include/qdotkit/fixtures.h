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

#ifndef QDOTKIT_FIXTURES_H
#define QDOTKIT_FIXTURES_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qdotkit/cn_model.h"
#include "qdotkit/povm.h"

namespace qdk {

/// Registry of planted CN models used for recovery tests and demos.
///
///   identity_n6           6 noiseless qubits.
///   uncorrelated_n10      10 singleton clusters, qubit q flips 0->1 with
///                         0.01 + 0.004 q and 1->0 with 0.03 + 0.006 q.
///   two_pair_clusters_n6  clusters {0,1} and {2,3} with cross-dependent flips
///                         plus joint flips, singletons {4}, {5}.
///   neighbor_chain_n8     cluster {0,1} whose qubit-0 flip rate is 0.02 or
///                         0.17 depending on the input of neighbor qubit 2;
///                         correlated pair {4,5}; other qubits singletons.
CnModel planted_model_library(std::string_view name);
std::vector<std::string> planted_model_names();

/// 4x4 noise matrix of two qubits (a, b), a the more significant bit. With
/// probability `joint` both bits flip; otherwise a flips with probability
/// flip_a[y_b] and b with flip_b[y_a], independently.
StochasticMatrix correlated_pair_noise(std::array<double, 2> flip_a, std::array<double, 2> flip_b, double joint);

/// Single-qubit POVM measuring in the X basis: {|+><+|, |-><-|}.
Povm x_basis_povm();

}  // namespace qdk

#endif
