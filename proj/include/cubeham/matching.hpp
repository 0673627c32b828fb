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
#include <span>
#include <vector>

#include "cubeham/hypercube.hpp"

namespace cubeham {

// Slot values of the partner table. Non-negative values are partner vertices.
using Slot = std::int32_t;

inline constexpr Slot kForbidden = -1;  // avoided, and must stay avoided
inline constexpr Slot kUncovered = -2;  // avoided, may be used by an extension
inline constexpr Slot kTerminal = -3;   // must be an end of an extending path
inline constexpr Slot kMatch = -4;      // to be matched by the generators

// A matching of K(Q_d) stored as one slot per vertex, plus the edge and
// terminal counters. Value type; mutations keep the table symmetric.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int d);

  static Matching from_edges(int d, std::span<const Edge> edges);

  int dim() const { return d_; }
  Vertex size() const { return static_cast<Vertex>(slots_.size()); }

  Slot slot(Vertex u) const { return slots_[u]; }
  bool covered(Vertex u) const { return slots_[u] >= 0; }
  // Partner of a covered vertex.
  Vertex partner(Vertex u) const { return static_cast<Vertex>(slots_[u]); }
  std::optional<Vertex> partner_of(Vertex u) const;
  bool has_edge(Vertex u, Vertex v) const { return slots_[u] == static_cast<Slot>(v); }

  std::size_t edge_count() const { return edge_count_; }
  std::size_t terminal_count() const { return terminal_count_; }

  // Both endpoints must currently hold a sentinel other than kForbidden.
  void add_edge(Vertex u, Vertex v);
  void add_edge(const Edge& e) { add_edge(e.u, e.v); }
  // Removes the edge at u; both endpoints become kUncovered.
  void remove_edge(Vertex u);
  // Sets a sentinel on an uncovered vertex.
  void set_label(Vertex u, Slot label);

  std::vector<Edge> edges() const;
  std::vector<Vertex> vertices_with(Slot label) const;
  std::size_t covered_count() const { return 2 * edge_count_; }
  bool is_perfect() const { return covered_count() == slots_.size(); }
  bool all_cube_edges() const;

  // Maximal in the sense of covering an end of every edge of Q_d that does not
  // touch a kForbidden vertex.
  bool is_maximal() const;

  // Returns false if the partner table is asymmetric or counters disagree.
  bool is_consistent() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  void check_invariants() const;

  int d_ = 0;
  std::vector<Slot> slots_;
  std::size_t edge_count_ = 0;
  std::size_t terminal_count_ = 0;
};

// Image of M under the translation x -> x XOR t. Sentinels move with vertices.
Matching translate(const Matching& m, Vertex t);

// Edge set of M restricted to the subcube Q^i_b, in the coordinates of Q_{d-1}.
std::vector<Edge> restrict_edges(std::span<const Edge> edges, int i, int b);

}  // namespace cubeham
