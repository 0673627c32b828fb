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

#include <optional>
#include <vector>

#include "cubeham/layers.hpp"
#include "cubeham/matching.hpp"

namespace cubeham {

// Translation taking z to the empty set. The map is an involution, so the
// same vertex pulls results back.
struct Normalized {
  Matching matching;
  Vertex shift = 0;

  Vertex to_normal(Vertex v) const { return v ^ shift; }
  Vertex from_normal(Vertex v) const { return v ^ shift; }
};

Normalized normalize_forbidden(const Matching& m, Vertex z);

// A direction i in which M holds a half-layer while covering every vertex of
// z's side except z. Vertices are in the caller's coordinates.
struct HWitness {
  int direction = 0;
  LayerId layer;          // in normalized coordinates
  Vertex side_bit = 0;    // z's value in coordinate `direction`
  std::size_t side_covered = 0;  // number of covered vertices on z's side
};

struct HReport {
  bool satisfied = true;
  std::vector<HWitness> witnesses;
};

// Throws std::invalid_argument if z is covered.
HReport check_property_h(const Matching& m, Vertex z = 0);

enum class HViolationCase { kNone, kCaseI, kCaseII };

const char* h_violation_case_name(HViolationCase c);

// Whether adding u u^i to M (z = 0, u in Q^i_0 \ {z}, u and u^i uncovered,
// M satisfying the property) breaks it, and which of the two shapes occurs.
// When a case fires the size consequences are checked and std::logic_error
// is thrown if they fail.
HViolationCase classify_h_violation(const Matching& m, Vertex u, int i);

struct HMaximality {
  bool maximal = true;
  std::optional<Edge> addable;  // smallest (u, i) that keeps the property
};

HMaximality is_h_maximal(const Matching& m, Vertex z = 0);

// Greedily adds the smallest addable cube edge until none is left.
Matching make_h_maximal(const Matching& m, Vertex z = 0);

}  // namespace cubeham
