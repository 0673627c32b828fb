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

#include <cstdint>
#include <span>
#include <vector>

#include "cubeham/matching.hpp"

namespace cubeham {

enum class LayerMode { kHalf, kNearHalf };

// True if m holds a half-layer (kHalf) or a half-layer with at most one
// missing edge (kNearHalf).
bool has_layer(const Matching& m, LayerMode mode);

// Perfect matching P on K(A) with m + P free of the patterns named by mode.
// Same-parity pairs are taken in ascending order while |A| >= 6, then the
// four-vertex endgame. Throws std::invalid_argument on unmet preconditions
// and std::logic_error if no admissible pairing exists.
std::vector<Edge> avoid_layer_completion(const Matching& m, std::span<const Vertex> a,
                                         LayerMode mode);

// Replaces long edges of a maximal matching by at most two cube edges each
// until only cube edges remain. Throws std::invalid_argument if m is not maximal.
Matching shorten_matching(const Matching& m);

enum class EdgeMode { kCube, kAny };

// Greedy completion to a maximal matching: cube edges by (u, direction), then
// in kAny mode same-parity long edges. Vertices labelled kForbidden in m and
// those listed in `forbidden` stay uncovered.
Matching extend_to_maximal(const Matching& m, std::span<const Vertex> forbidden = {},
                           EdgeMode mode = EdgeMode::kCube);

// f(d) = d 2^d / (3d - 1) as an exact fraction with its ceilings.
struct BoundF {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  std::int64_t ceil_f = 0;
  std::int64_t ceil_f_over_d = 0;
};

BoundF bound_f(int d);

}  // namespace cubeham
