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

#include <span>
#include <string>
#include <vector>

#include "cubeham/matching.hpp"

namespace cubeham {

// Lexicographically minimal slot encoding over a group of cube automorphisms.
// Slots are coded as kForbidden 0, kUncovered 1, kTerminal 2, kMatch 3 and
// partner v as v + 4; one byte per slot up to d = 7, four bytes above.
using CanonicalForm = std::string;

// Automorphisms x -> sigma(x) xor t. Without translations t is always 0.
class DirectionGroup {
 public:
  // Direction permutations fixing each listed direction.
  DirectionGroup(int d, std::span<const int> fixed_directions, bool with_translations = false);

  int dim() const { return d_; }
  std::size_t size() const { return maps_.size(); }
  // Vertex map of element g.
  std::span<const Vertex> map(std::size_t g) const { return maps_[g]; }

 private:
  int d_;
  std::vector<std::vector<Vertex>> maps_;
  std::vector<std::vector<Vertex>> inverse_;
  friend CanonicalForm canonical_form(const Matching& m, const DirectionGroup& group);
};

Matching apply_automorphism(const Matching& m, std::span<const Vertex> map);

CanonicalForm encode(const Matching& m);
CanonicalForm canonical_form(const Matching& m, const DirectionGroup& group);
// At most two fixed directions; direction permutations only.
CanonicalForm canonical_form(const Matching& m, std::span<const int> fixed_directions = {});

}  // namespace cubeham
