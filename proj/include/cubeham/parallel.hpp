// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cubeham/canonical.hpp"

namespace cubeham {

// kSerial is the reference implementation the OpenMP kernels are tested against.
enum class Exec { kSerial, kParallel };

// Worker count from CUBEHAM_JOBS, else the OpenMP default.
int worker_count();

// Calls body(k) for k in [0, n). Under kParallel iterations are spread over
// worker_count() threads with dynamic scheduling; body must only write to
// state owned by index k.
void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

std::vector<CanonicalForm> canonicalize_batch(const std::vector<Matching>& batch,
                                              const DirectionGroup& group, Exec exec);

}  // namespace cubeham
