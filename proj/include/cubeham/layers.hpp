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
#include <span>
#include <vector>

#include "cubeham/matching.hpp"

namespace cubeham {

// The subcube Q^j_b.
struct LayerSide {
  int direction = 0;
  int bit = 0;
  friend bool operator==(const LayerSide&, const LayerSide&) = default;
};

// One half of a layer: the edges x x^i with x in Q^i_0 of parity `parity`.
// With a side, the same inside the subcube Q^j_b (a quad-layer of Q_d).
struct LayerId {
  int direction = 0;
  int parity = 0;
  std::optional<LayerSide> side;
  friend bool operator==(const LayerId&, const LayerId&) = default;
};

int layer_size(int d, const LayerId& id);
std::vector<Edge> layer_edges(int d, const LayerId& id);
// True if x is an end vertex of some edge of the full layer.
bool layer_touches(const LayerId& id, Vertex x);
// Number of the layer's edges present in m, by direct enumeration.
int present_count(const Matching& m, const LayerId& id);
std::vector<Edge> missing_edges(const Matching& m, const LayerId& id);

// x-dangerous: the full layer avoids x and, for a quad-layer, x lies in its subcube.
bool is_dangerous_for(const LayerId& id, Vertex x);

enum class LayerKind { kHalf, kNearHalf, kTwoNearHalf, kQuad, kNearQuad };

const char* layer_kind_name(LayerKind k);

struct LayerPattern {
  LayerKind kind = LayerKind::kHalf;
  LayerId id;
  std::vector<Edge> missing;
  std::vector<Vertex> extension_vertices;
  // All extension vertices covered by edges of the matching.
  bool covered = false;
  // Set when find_layers was given a reference vertex.
  bool dangerous = false;
};

// Per-direction edge counts of a matching, computed in one pass over its
// edges: half[i][p] and quad[i][j][b][p] in the notation of LayerId.
class LayerIndex {
 public:
  explicit LayerIndex(const Matching& m);

  int dim() const { return d_; }
  int half_count(int i, int p) const { return half_[index(i, p)]; }
  int quad_count(int i, int j, int b, int p) const { return quad_[qindex(i, j, b, p)]; }
  int count(const LayerId& id) const;
  int deficit(const LayerId& id) const { return layer_size(d_, id) - count(id); }

 private:
  std::size_t index(int i, int p) const { return static_cast<std::size_t>((i - 1) * 2 + p); }
  std::size_t qindex(int i, int j, int b, int p) const {
    return static_cast<std::size_t>((((i - 1) * d_ + (j - 1)) * 2 + b) * 2 + p);
  }

  int d_;
  std::vector<int> half_;
  std::vector<int> quad_;
};

struct LayerFilter {
  bool half = true;
  bool near_half = true;
  bool two_near_half = true;
  bool quad = true;
  bool near_quad = true;
};

// Every half-layer with at most two missing edges and every quad-layer with
// at most one missing edge, each reported once with its exact kind.
std::vector<LayerPattern> find_layers(const Matching& m, const LayerFilter& filter = {},
                                      std::optional<Vertex> x = std::nullopt);

struct DangerReport {
  Vertex x = 0;
  std::vector<LayerPattern> patterns;
};

DangerReport danger_report(const Matching& m, Vertex x);

struct UnionReport {
  std::size_t shared_vertices = 0;
  bool paths_of_length_two = false;  // meaningful for exactly two layers
  std::size_t avoided_vertices = 0;
};

// Structure of a union of full half-layers in pairwise distinct directions.
// Throws std::invalid_argument if two layers share a direction.
UnionReport check_union_structure(int d, std::span<const LayerId> layers);

struct LayerDirections {
  std::vector<int> half;
  std::vector<int> near_half;      // includes full half-layers
  std::vector<int> two_near_half;  // includes near and full half-layers
  std::vector<int> dangerous_quad;  // z-dangerous quad or near quad-layers
};

// Directions hosting each kind, for the reference vertex z.
LayerDirections count_layer_directions(const Matching& m, Vertex z);

// Direction maximizing the cut of a maximal matching (smallest on ties).
// Throws std::logic_error if the cut bound for d = 5 / d >= 6 fails.
int choose_direction_maximal_cut(const Matching& m);

// For d = 5 and a matching avoiding z = 0 that contains a z-dangerous (near)
// quad-layer: follows dangerous layers until the lower side holds none.
// A near half-layer missing only the edge at z may remain below.
int choose_direction_q5_quad(const Matching& m);

// Number of edges crossing direction i.
int cut_size(const Matching& m, int i);

}  // namespace cubeham
