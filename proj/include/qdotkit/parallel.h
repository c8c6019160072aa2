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

#ifndef QDOTKIT_PARALLEL_H
#define QDOTKIT_PARALLEL_H

#include <cstddef>
#include <functional>

namespace qdk {

/// Number of worker threads used by the parallel routines. Defaults to the
/// QDOTKIT_THREADS environment variable, else 1.
std::size_t default_threads();
void set_default_threads(std::size_t n);

/// Calls body(i) for every i in [0, n) using up to `threads` workers. Items
/// are handed out in contiguous blocks; body must only write to slot i of any
/// shared output. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body, std::size_t threads = 0);

}  // namespace qdk

#endif
