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
#include <optional>
#include <string_view>
#include <vector>

#include "cubeham/matching.hpp"
#include "cubeham/random.hpp"

namespace cubeham {

enum class InstanceKind {
  kUniformKqd,        // random matching of K(Q_d)
  kUniformQd,         // random matching of Q_d
  kPerfectKqd,        // random perfect matching of K(Q_d)
  kHSatisfying,       // avoids 0 and satisfies property (H) for it
  kHalfLayerPlanted,  // holds a half-layer plus random edges
  kParityClass,       // perfect matching of the even vertices
  kHamlace,           // perfect on all but x, y; free of half-layers
  kHamlacePlanted,    // as kHamlace but holding a half-layer
  kHViolating,        // avoids 0 and violates property (H) for it
  kCrossingHeavy,     // avoids 0, nearly every vertex matched across one direction
  kBalancedCut,       // avoids 0, maximal cube matching spreading edges over directions
};

const char* instance_kind_name(InstanceKind k);
std::optional<InstanceKind> parse_instance_kind(std::string_view name);
std::vector<InstanceKind> all_instance_kinds();

struct Instance {
  InstanceKind kind = InstanceKind::kUniformKqd;
  int d = 0;
  std::uint64_t seed = 0;
  Matching matching;
  std::optional<Vertex> avoid;  // the vertex z for the avoiding families
  std::optional<Vertex> x;      // laceability ends
  std::optional<Vertex> y;
};

// Deterministic in (kind, d, seed). The result is re-checked against its
// family predicate. Throws std::invalid_argument for unsupported (kind, d).
Instance gen_instance(InstanceKind kind, int d, std::uint64_t seed);

// Family membership, computed from the definitions.
bool in_family(const Instance& inst);

// Building blocks shared with the tests.
std::vector<Vertex> shuffled_vertices(int d, Rng& rng);
// Pairs consecutive vertices of `pool` after shuffling it.
void add_random_pairing(Matching& m, std::vector<Vertex> pool, Rng& rng);
// Random greedy cube edges among kUncovered vertices, up to `limit` edges.
void add_random_cube_edges(Matching& m, std::size_t limit, Rng& rng);

}  // namespace cubeham
