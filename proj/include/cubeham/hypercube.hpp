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

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cubeham {

// A vertex of Q_d is a subset of [d]; element i is stored in bit i-1.
using Vertex = std::uint32_t;

inline constexpr int kMaxDimension = 24;

// Throws std::invalid_argument unless 1 <= d <= kMaxDimension.
void check_dimension(int d);

constexpr Vertex vertex_count(int d) { return Vertex{1} << d; }

// Bit mask of direction i (1-based).
constexpr Vertex direction_bit(int i) { return Vertex{1} << (i - 1); }

constexpr bool has_direction(Vertex u, int i) { return (u & direction_bit(i)) != 0; }

constexpr int parity(Vertex u) { return std::popcount(u) & 1; }

constexpr int distance(Vertex u, Vertex v) { return std::popcount(u ^ v); }

// u^i, with the direction checked against the ambient dimension.
Vertex neighbor(Vertex u, int i, int d);

// Unordered pair of distinct vertices, stored with the smaller endpoint first.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b);

  int length() const { return distance(u, v); }
  bool is_cube_edge() const { return length() == 1; }
  bool contains(Vertex x) const { return x == u || x == v; }
  Vertex other(Vertex x) const { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return (std::size_t{e.u} << 32) ^ e.v;
  }
};

// Partition of an edge set by a direction: inside Q^i_0, inside Q^i_1, crossing.
struct DirectionSplit {
  std::vector<Edge> inside0;
  std::vector<Edge> inside1;
  std::vector<Edge> crossing;
};

DirectionSplit split(std::span<const Edge> edges, int i);

// Total length computed both as the sum of edge lengths and as the sum of
// cut sizes over all directions. Throws std::logic_error if they differ.
long total_length(std::span<const Edge> edges, int d);

// Maps a vertex of the subcube Q^i_b to Q_{d-1} by deleting coordinate i.
constexpr Vertex compress(Vertex v, int i) {
  const Vertex low = v & (direction_bit(i) - 1);
  const Vertex high = (v >> i) << (i - 1);
  return low | high;
}

// Inverse of compress for the side b of direction i.
constexpr Vertex expand(Vertex w, int i, int b) {
  const Vertex low = w & (direction_bit(i) - 1);
  const Vertex high = (w >> (i - 1)) << i;
  return low | high | (b != 0 ? direction_bit(i) : 0);
}

}  // namespace cubeham
