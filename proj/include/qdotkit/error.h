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

#ifndef QDOTKIT_ERROR_H
#define QDOTKIT_ERROR_H

#include <stdexcept>
#include <string>

namespace qdk {

/// Input data does not cover what an operation needs (missing settings,
/// uncovered marginal columns, ill-conditioned noise matrices).
struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative routine stopped without meeting its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reading or writing an interchange file failed.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qdk

#endif
