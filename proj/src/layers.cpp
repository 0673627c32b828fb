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

#include "cubeham/layers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cubeham {

int layer_size(int d, const LayerId& id) {
  const int free_bits = id.side ? d - 3 : d - 2;
  return free_bits < 0 ? 0 : 1 << free_bits;
}

namespace {

bool in_base(const LayerId& id, Vertex x) {
  if (has_direction(x, id.direction)) return false;
  if (id.side && has_direction(x, id.side->direction) != (id.side->bit != 0)) return false;
  return parity(x) == id.parity;
}

template <typename F>
void for_each_layer_edge(int d, const LayerId& id, F&& f) {
  const Vertex n = vertex_count(d);
  const Vertex step = direction_bit(id.direction);
  for (Vertex x = 0; x < n; ++x) {
    if (in_base(id, x)) f(x, x ^ step);
  }
}

}  // namespace

std::vector<Edge> layer_edges(int d, const LayerId& id) {
  std::vector<Edge> out;
  for_each_layer_edge(d, id, [&](Vertex a, Vertex b) { out.emplace_back(a, b); });
  return out;
}

bool layer_touches(const LayerId& id, Vertex x) {
  return in_base(id, x & ~direction_bit(id.direction));
}

bool is_dangerous_for(const LayerId& id, Vertex x) {
  if (layer_touches(id, x)) return false;
  return !id.side || has_direction(x, id.side->direction) == (id.side->bit != 0);
}

int present_count(const Matching& m, const LayerId& id) {
  int c = 0;
  for_each_layer_edge(m.dim(), id, [&](Vertex a, Vertex b) { c += m.has_edge(a, b) ? 1 : 0; });
  return c;
}

std::vector<Edge> missing_edges(const Matching& m, const LayerId& id) {
  std::vector<Edge> out;
  for_each_layer_edge(m.dim(), id, [&](Vertex a, Vertex b) {
    if (!m.has_edge(a, b)) out.emplace_back(a, b);
  });
  return out;
}

const char* layer_kind_name(LayerKind k) {
  switch (k) {
    case LayerKind::kHalf: return "half";
    case LayerKind::kNearHalf: return "near_half";
    case LayerKind::kTwoNearHalf: return "two_near_half";
    case LayerKind::kQuad: return "quad";
    case LayerKind::kNearQuad: return "near_quad";
  }
  return "?";
}

LayerIndex::LayerIndex(const Matching& m)
    : d_(m.dim()),
      half_(static_cast<std::size_t>(2 * m.dim()), 0),
      quad_(static_cast<std::size_t>(4 * m.dim() * m.dim()), 0) {
  for (Vertex u = 0; u < m.size(); ++u) {
    if (!m.covered(u)) continue;
    const Vertex v = m.partner(u);
    if (v < u || distance(u, v) != 1) continue;
    const int i = std::countr_zero(u ^ v) + 1;
    const Vertex x = has_direction(u, i) ? v : u;
    const int p = parity(x);
    ++half_[index(i, p)];
    for (int j = 1; j <= d_; ++j) {
      if (j != i) ++quad_[qindex(i, j, has_direction(x, j) ? 1 : 0, p)];
    }
  }
}

int LayerIndex::count(const LayerId& id) const {
  if (id.side) return quad_count(id.direction, id.side->direction, id.side->bit, id.parity);
  return half_count(id.direction, id.parity);
}

namespace {

LayerPattern make_pattern(const Matching& m, LayerKind kind, const LayerId& id,
                          std::optional<Vertex> x) {
  LayerPattern p;
  p.kind = kind;
  p.id = id;
  p.missing = missing_edges(m, id);
  p.covered = true;
  for (const Edge& e : p.missing) {
    for (Vertex v : {e.u, e.v}) {
      p.extension_vertices.push_back(v);
      if (!m.covered(v)) p.covered = false;
    }
  }
  if (x) p.dangerous = is_dangerous_for(id, *x);
  return p;
}

}  // namespace

std::vector<LayerPattern> find_layers(const Matching& m, const LayerFilter& filter,
                                      std::optional<Vertex> x) {
  std::vector<LayerPattern> out;
  const int d = m.dim();
  if (d < 2) return out;
  const LayerIndex index(m);
  for (int i = 1; i <= d; ++i) {
    for (int p = 0; p < 2; ++p) {
      const LayerId id{i, p, std::nullopt};
      const int count = index.count(id);
      if (count == 0) continue;
      const int def = layer_size(d, id) - count;
      if (def == 0 && filter.half) out.push_back(make_pattern(m, LayerKind::kHalf, id, x));
      if (def == 1 && filter.near_half) out.push_back(make_pattern(m, LayerKind::kNearHalf, id, x));
      if (def == 2 && filter.two_near_half) {
        out.push_back(make_pattern(m, LayerKind::kTwoNearHalf, id, x));
      }
    }
  }
  if (d < 3) return out;
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      if (j == i) continue;
      for (int b = 0; b < 2; ++b) {
        for (int p = 0; p < 2; ++p) {
          const LayerId id{i, p, LayerSide{j, b}};
          const int count = index.count(id);
          if (count == 0) continue;
          const int def = layer_size(d, id) - count;
          if (def == 0 && filter.quad) out.push_back(make_pattern(m, LayerKind::kQuad, id, x));
          if (def == 1 && filter.near_quad) {
            out.push_back(make_pattern(m, LayerKind::kNearQuad, id, x));
          }
        }
      }
    }
  }
  return out;
}

DangerReport danger_report(const Matching& m, Vertex x) {
  DangerReport r;
  r.x = x;
  for (auto& p : find_layers(m, {}, x)) {
    if (p.dangerous) r.patterns.push_back(std::move(p));
  }
  return r;
}

UnionReport check_union_structure(int d, std::span<const LayerId> layers) {
  for (std::size_t a = 0; a < layers.size(); ++a) {
    if (layers[a].side) throw std::invalid_argument("expected half-layers of Q_d");
    for (std::size_t b = a + 1; b < layers.size(); ++b) {
      if (layers[a].direction == layers[b].direction) {
        throw std::invalid_argument("half-layers must have distinct directions");
      }
    }
  }
  const Vertex n = vertex_count(d);
  std::vector<int> hits(n, 0);
  std::vector<std::vector<Edge>> edge_sets;
  for (const LayerId& id : layers) {
    edge_sets.push_back(layer_edges(d, id));
    for (const Edge& e : edge_sets.back()) {
      ++hits[e.u];
      ++hits[e.v];
    }
  }
  UnionReport r;
  for (Vertex v = 0; v < n; ++v) {
    if (hits[v] >= 2) ++r.shared_vertices;
    if (hits[v] == 0) ++r.avoided_vertices;
  }
  if (edge_sets.size() == 2) {
    r.paths_of_length_two = true;
    for (int side = 0; side < 2; ++side) {
      const auto& mine = edge_sets[side];
      const auto& theirs = edge_sets[1 - side];
      for (const Edge& e : mine) {
        const auto meets = std::count_if(theirs.begin(), theirs.end(), [&](const Edge& f) {
          return f.contains(e.u) || f.contains(e.v);
        });
        if (meets != 1) r.paths_of_length_two = false;
      }
    }
  }
  return r;
}

LayerDirections count_layer_directions(const Matching& m, Vertex z) {
  const Matching t = translate(m, z);
  const LayerIndex index(t);
  const int d = t.dim();
  LayerDirections out;
  for (int i = 1; i <= d; ++i) {
    int best = layer_size(d, LayerId{i, 0, std::nullopt});
    for (int p = 0; p < 2; ++p) best = std::min(best, index.deficit(LayerId{i, p, std::nullopt}));
    if (best == 0) out.half.push_back(i);
    if (best <= 1) out.near_half.push_back(i);
    if (best <= 2) out.two_near_half.push_back(i);
    if (d < 3) continue;
    for (int j = 1; j <= d; ++j) {
      if (j == i) continue;
      // z = 0 lies in Q^j_0 and is avoided only by the odd half.
      const LayerId id{i, 1, LayerSide{j, 0}};
      if (index.deficit(id) <= 1) {
        out.dangerous_quad.push_back(i);
        break;
      }
    }
  }
  return out;
}

int cut_size(const Matching& m, int i) {
  int c = 0;
  for (Vertex u = 0; u < m.size(); ++u) {
    if (m.covered(u) && !has_direction(u, i) && has_direction(m.partner(u), i)) ++c;
  }
  return c;
}

int choose_direction_maximal_cut(const Matching& m) {
  const int d = m.dim();
  if (d < 5) throw std::invalid_argument("maximal-cut direction needs d >= 5");
  if (!m.is_maximal()) throw std::invalid_argument("matching is not maximal");
  int best = 1;
  int best_cut = -1;
  for (int i = 1; i <= d; ++i) {
    const int c = cut_size(m, i);
    if (c > best_cut) {
      best_cut = c;
      best = i;
    }
  }
  const int bound = d == 5 ? 3 : 4;
  if (best_cut < bound) {
    throw std::logic_error("maximal-cut bound violated: cut " + std::to_string(best_cut) +
                           " < " + std::to_string(bound));
  }
  return best;
}

namespace {

// Smallest direction k != i such that m holds a z-dangerous (near) quad-layer
// of Q^i_0 in direction k, with z = 0.
std::optional<int> dangerous_in_lower_side(const LayerIndex& index, int i) {
  for (int k = 1; k <= index.dim(); ++k) {
    if (k == i) continue;
    if (index.deficit(LayerId{k, 1, LayerSide{i, 0}}) <= 1) return k;
  }
  return std::nullopt;
}

}  // namespace

int choose_direction_q5_quad(const Matching& m) {
  if (m.dim() != 5) throw std::invalid_argument("the quad-cut rule applies to d = 5");
  if (m.covered(0)) throw std::invalid_argument("matching covers z");
  const LayerIndex index(m);
  const auto dirs = count_layer_directions(m, 0);
  if (dirs.dangerous_quad.empty()) {
    throw std::invalid_argument("no z-dangerous (near) quad-layer present");
  }
  int i = dirs.dangerous_quad.front();
  std::vector<bool> seen(6, false);
  while (auto next = dangerous_in_lower_side(index, i)) {
    seen[static_cast<std::size_t>(i)] = true;
    if (seen[static_cast<std::size_t>(*next)]) {
      throw std::logic_error("quad-cut process loops");
    }
    i = *next;
  }
  if (cut_size(m, i) < 3) throw std::logic_error("quad-cut bound violated");
  // Even lower half-layers contain the edge at z, so only odd ones can be
  // z-dangerous.
  for (int k = 1; k <= 5; ++k) {
    if (k != i && index.deficit(LayerId{k, 1, LayerSide{i, 0}}) <= 1) {
      throw std::logic_error("quad-cut direction leaves a z-dangerous (near) half-layer below");
    }
  }
  return i;
}

}  // namespace cubeham
