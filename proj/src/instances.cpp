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

#include "cubeham/instances.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "cubeham/layers.hpp"
#include "cubeham/property_h.hpp"

namespace cubeham {

namespace {

struct KindName {
  InstanceKind kind;
  const char* name;
  int min_d;
};

constexpr std::array<KindName, 11> kKinds{{
    {InstanceKind::kUniformKqd, "uniform_kqd", 1},
    {InstanceKind::kUniformQd, "uniform_qd", 1},
    {InstanceKind::kPerfectKqd, "perfect_kqd", 1},
    {InstanceKind::kHSatisfying, "h_satisfying", 2},
    {InstanceKind::kHalfLayerPlanted, "half_layer_planted", 2},
    {InstanceKind::kParityClass, "parity_class", 2},
    {InstanceKind::kHamlace, "hamlace", 4},
    {InstanceKind::kHamlacePlanted, "hamlace_planted", 4},
    {InstanceKind::kHViolating, "h_violating", 3},
    {InstanceKind::kCrossingHeavy, "crossing_heavy", 3},
    {InstanceKind::kBalancedCut, "balanced_cut", 3},
}};

constexpr int kMaxGenDimension = 20;
constexpr int kAttempts = 100000;

const KindName& entry(InstanceKind k) {
  for (const auto& e : kKinds) {
    if (e.kind == k) return e;
  }
  throw std::invalid_argument("unknown instance kind");
}

bool has_half_layer(const Matching& m) {
  const LayerIndex idx(m);
  for (int i = 1; i <= m.dim(); ++i) {
    for (int p = 0; p <= 1; ++p) {
      if (idx.deficit(LayerId{i, p, std::nullopt}) == 0) return true;
    }
  }
  return false;
}

std::vector<Vertex> uncovered(const Matching& m) { return m.vertices_with(kUncovered); }

// Random matching of K(Q_d) on the uncovered vertices of m with a random size.
void add_random_edges(Matching& m, Rng& rng) {
  auto pool = uncovered(m);
  rng.shuffle(std::span<Vertex>(pool));
  const std::size_t k = static_cast<std::size_t>(rng.below(pool.size() / 2 + 1));
  for (std::size_t e = 0; e < k; ++e) m.add_edge(pool[2 * e], pool[2 * e + 1]);
}

void plant_half_layer(Matching& m, int i, int p) {
  for (const Edge& e : layer_edges(m.dim(), LayerId{i, p, std::nullopt})) m.add_edge(e);
}

// One attempt at a matching avoiding 0 that is likely to be near the (H)
// boundary: layers of several shapes, some edges removed, random filling.
Matching avoiding_candidate(int d, Rng& rng) {
  Matching m(d);
  m.set_label(0, kForbidden);
  switch (rng.below(4)) {
    case 0:
      add_random_edges(m, rng);
      break;
    case 1:
      add_random_cube_edges(m, m.size(), rng);
      break;
    default: {
      const int i = static_cast<int>(rng.between(1, d));
      std::optional<LayerSide> side;
      if (d >= 3 && rng.chance(1, 2)) {
        int j = static_cast<int>(rng.between(1, d - 1));
        if (j >= i) ++j;
        side = LayerSide{j, static_cast<int>(rng.below(2))};
      }
      const LayerId id{i, static_cast<int>(rng.below(2)), side};
      auto edges = layer_edges(d, id);
      rng.shuffle(std::span<Edge>(edges));
      const std::size_t drop = static_cast<std::size_t>(rng.below(3));
      for (std::size_t k = drop; k < edges.size(); ++k) {
        if (!edges[k].contains(0)) m.add_edge(edges[k]);
      }
      if (rng.chance(1, 2)) {
        add_random_cube_edges(m, m.size(), rng);
      } else {
        add_random_edges(m, rng);
      }
    }
  }
  m.set_label(0, kUncovered);
  return m;
}

Matching h_violating(int d, Rng& rng) {
  // Half-layer avoiding 0 in direction i: odd lower ends. The even lower
  // vertices other than 0 are then all covered, an odd number of them
  // across to the upper side.
  const int i = static_cast<int>(rng.between(1, d));
  Matching m(d);
  plant_half_layer(m, i, 1);
  std::vector<Vertex> lower_even;
  std::vector<Vertex> upper_free;
  for (Vertex v = 1; v < m.size(); ++v) {
    if (m.covered(v)) continue;
    (has_direction(v, i) ? upper_free : lower_even).push_back(v);
  }
  rng.shuffle(std::span<Vertex>(lower_even));
  rng.shuffle(std::span<Vertex>(upper_free));
  const std::size_t max_cross = std::min(lower_even.size(), upper_free.size());
  std::size_t cross = 1 + 2 * static_cast<std::size_t>(rng.below((max_cross + 1) / 2));
  if (cross > max_cross) cross = max_cross;
  for (std::size_t k = 0; k < cross; ++k) m.add_edge(lower_even[k], upper_free[k]);
  for (std::size_t k = cross; k + 1 < lower_even.size(); k += 2) {
    m.add_edge(lower_even[k], lower_even[k + 1]);
  }
  std::vector<Vertex> rest(upper_free.begin() + static_cast<std::ptrdiff_t>(cross), upper_free.end());
  rng.shuffle(std::span<Vertex>(rest));
  const std::size_t extra = static_cast<std::size_t>(rng.below(rest.size() / 2 + 1));
  for (std::size_t e = 0; e < extra; ++e) m.add_edge(rest[2 * e], rest[2 * e + 1]);
  return m;
}

Matching crossing_heavy(int d, Rng& rng) {
  const int i = static_cast<int>(rng.between(1, d));
  Matching m(d);
  std::vector<Vertex> lower;
  std::vector<Vertex> upper;
  for (Vertex v = 1; v < m.size(); ++v) (has_direction(v, i) ? upper : lower).push_back(v);
  rng.shuffle(std::span<Vertex>(lower));
  rng.shuffle(std::span<Vertex>(upper));
  // Leave a few lower vertices for inside edges; keep the cut odd.
  std::size_t inside = 2 * static_cast<std::size_t>(rng.below(3));
  while (inside >= lower.size()) inside -= 2;
  std::size_t cross = lower.size() - inside;
  if (cross % 2 == 0) --cross;
  for (std::size_t k = 0; k < cross; ++k) m.add_edge(lower[k], upper[k]);
  for (std::size_t k = cross; k + 1 < lower.size(); k += 2) m.add_edge(lower[k], lower[k + 1]);
  std::vector<Vertex> rest(upper.begin() + static_cast<std::ptrdiff_t>(cross), upper.end());
  add_random_pairing(m, rest, rng);
  return m;
}

// Maximal matching of Q_d avoiding 0, built from random vertices, each time
// using the least used free direction.
Matching balanced_cut(int d, Rng& rng) {
  Matching m(d);
  m.set_label(0, kForbidden);
  std::vector<int> used(static_cast<std::size_t>(d) + 1, 0);
  auto order = shuffled_vertices(d, rng);
  for (Vertex u : order) {
    if (m.slot(u) != kUncovered) continue;
    int best = 0;
    for (int i = 1; i <= d; ++i) {
      if (m.slot(u ^ direction_bit(i)) != kUncovered) continue;
      if (best == 0 || used[static_cast<std::size_t>(i)] < used[static_cast<std::size_t>(best)]) {
        best = i;
      }
    }
    if (best == 0) continue;
    m.add_edge(u, u ^ direction_bit(best));
    ++used[static_cast<std::size_t>(best)];
  }
  m.set_label(0, kUncovered);
  return m;
}

void pick_ends(int d, Rng& rng, Vertex& x, Vertex& y) {
  const Vertex n = vertex_count(d);
  do {
    x = static_cast<Vertex>(rng.below(n));
    y = static_cast<Vertex>(rng.below(n));
  } while (parity(x) == parity(y));
}

Instance generate(InstanceKind kind, int d, Rng& rng) {
  Instance inst;
  inst.kind = kind;
  inst.d = d;
  switch (kind) {
    case InstanceKind::kUniformKqd:
      inst.matching = Matching(d);
      add_random_edges(inst.matching, rng);
      break;
    case InstanceKind::kUniformQd:
      inst.matching = Matching(d);
      add_random_cube_edges(inst.matching,
                            static_cast<std::size_t>(rng.below(vertex_count(d) / 2 + 1)), rng);
      break;
    case InstanceKind::kPerfectKqd:
      inst.matching = Matching(d);
      add_random_pairing(inst.matching, shuffled_vertices(d, rng), rng);
      break;
    case InstanceKind::kHSatisfying:
      inst.avoid = 0;
      for (int a = 0; a < kAttempts; ++a) {
        Matching m = avoiding_candidate(d, rng);
        if (check_property_h(m, 0).satisfied) {
          inst.matching = std::move(m);
          return inst;
        }
      }
      throw std::logic_error("no (H)-satisfying sample found");
    case InstanceKind::kHalfLayerPlanted:
      inst.matching = Matching(d);
      plant_half_layer(inst.matching, static_cast<int>(rng.between(1, d)),
                       static_cast<int>(rng.below(2)));
      add_random_edges(inst.matching, rng);
      break;
    case InstanceKind::kParityClass: {
      inst.matching = Matching(d);
      std::vector<Vertex> even;
      for (Vertex v = 0; v < vertex_count(d); ++v) {
        if (parity(v) == 0) even.push_back(v);
      }
      add_random_pairing(inst.matching, even, rng);
      break;
    }
    case InstanceKind::kHamlace:
      for (int a = 0; a < kAttempts; ++a) {
        Vertex x = 0;
        Vertex y = 0;
        pick_ends(d, rng, x, y);
        Matching m(d);
        m.set_label(x, kForbidden);
        m.set_label(y, kForbidden);
        add_random_cube_edges(m, static_cast<std::size_t>(rng.below(vertex_count(d) / 2)), rng);
        add_random_pairing(m, uncovered(m), rng);
        m.set_label(x, kUncovered);
        m.set_label(y, kUncovered);
        if (has_half_layer(m)) continue;
        inst.matching = std::move(m);
        inst.x = x;
        inst.y = y;
        return inst;
      }
      throw std::logic_error("no half-layer-free sample found");
    case InstanceKind::kHamlacePlanted: {
      const int i = static_cast<int>(rng.between(1, d));
      const int p = static_cast<int>(rng.below(2));
      const LayerId id{i, p, std::nullopt};
      Vertex x = 0;
      Vertex y = 0;
      do {
        pick_ends(d, rng, x, y);
      } while (layer_touches(id, x) || layer_touches(id, y));
      Matching m(d);
      plant_half_layer(m, i, p);
      m.set_label(x, kForbidden);
      m.set_label(y, kForbidden);
      add_random_pairing(m, uncovered(m), rng);
      m.set_label(x, kUncovered);
      m.set_label(y, kUncovered);
      inst.matching = std::move(m);
      inst.x = x;
      inst.y = y;
      break;
    }
    case InstanceKind::kHViolating:
      inst.avoid = 0;
      inst.matching = h_violating(d, rng);
      break;
    case InstanceKind::kCrossingHeavy:
      inst.avoid = 0;
      for (int a = 0; a < kAttempts; ++a) {
        Matching m = crossing_heavy(d, rng);
        if (check_property_h(m, 0).satisfied) {
          inst.matching = std::move(m);
          return inst;
        }
      }
      throw std::logic_error("no (H)-satisfying crossing sample found");
    case InstanceKind::kBalancedCut:
      inst.avoid = 0;
      for (int a = 0; a < kAttempts; ++a) {
        Matching m = balanced_cut(d, rng);
        if (check_property_h(m, 0).satisfied) {
          inst.matching = std::move(m);
          return inst;
        }
      }
      throw std::logic_error("no (H)-satisfying balanced sample found");
  }
  return inst;
}

}  // namespace

const char* instance_kind_name(InstanceKind k) { return entry(k).name; }

std::optional<InstanceKind> parse_instance_kind(std::string_view name) {
  for (const auto& e : kKinds) {
    if (name == e.name) return e.kind;
  }
  return std::nullopt;
}

std::vector<InstanceKind> all_instance_kinds() {
  std::vector<InstanceKind> out;
  for (const auto& e : kKinds) out.push_back(e.kind);
  return out;
}

std::vector<Vertex> shuffled_vertices(int d, Rng& rng) {
  std::vector<Vertex> vs(vertex_count(d));
  for (Vertex v = 0; v < vs.size(); ++v) vs[v] = v;
  rng.shuffle(std::span<Vertex>(vs));
  return vs;
}

void add_random_pairing(Matching& m, std::vector<Vertex> pool, Rng& rng) {
  rng.shuffle(std::span<Vertex>(pool));
  for (std::size_t k = 0; k + 1 < pool.size(); k += 2) m.add_edge(pool[k], pool[k + 1]);
}

void add_random_cube_edges(Matching& m, std::size_t limit, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < m.size(); ++u) {
    for (int i = 1; i <= m.dim(); ++i) {
      const Vertex v = u ^ direction_bit(i);
      if (u < v) edges.emplace_back(u, v);
    }
  }
  rng.shuffle(std::span<Edge>(edges));
  std::size_t added = 0;
  for (const Edge& e : edges) {
    if (added >= limit) break;
    if (m.slot(e.u) == kUncovered && m.slot(e.v) == kUncovered) {
      m.add_edge(e);
      ++added;
    }
  }
}

bool in_family(const Instance& inst) {
  const Matching& m = inst.matching;
  if (m.dim() != inst.d) return false;
  for (Vertex v = 0; v < m.size(); ++v) {
    if (m.slot(v) < 0 && m.slot(v) != kUncovered) return false;
  }
  auto avoids_zero = [&] { return inst.avoid == Vertex{0} && !m.covered(0); };
  switch (inst.kind) {
    case InstanceKind::kUniformKqd:
      return true;
    case InstanceKind::kUniformQd:
      return m.all_cube_edges();
    case InstanceKind::kPerfectKqd:
      return m.is_perfect();
    case InstanceKind::kBalancedCut: {
      Matching probe = m;
      probe.set_label(0, kForbidden);
      if (!m.all_cube_edges() || !probe.is_maximal()) return false;
      [[fallthrough]];
    }
    case InstanceKind::kHSatisfying:
    case InstanceKind::kCrossingHeavy:
      return avoids_zero() && check_property_h(m, 0).satisfied;
    case InstanceKind::kHViolating:
      return avoids_zero() && !check_property_h(m, 0).satisfied;
    case InstanceKind::kHalfLayerPlanted:
      return has_half_layer(m);
    case InstanceKind::kParityClass:
      for (Vertex v = 0; v < m.size(); ++v) {
        if (m.covered(v) != (parity(v) == 0)) return false;
        if (m.covered(v) && parity(m.partner(v)) != 0) return false;
      }
      return true;
    case InstanceKind::kHamlace:
    case InstanceKind::kHamlacePlanted: {
      if (!inst.x || !inst.y || parity(*inst.x) == parity(*inst.y)) return false;
      if (m.covered(*inst.x) || m.covered(*inst.y) || m.covered_count() + 2 != m.size()) {
        return false;
      }
      return has_half_layer(m) == (inst.kind == InstanceKind::kHamlacePlanted);
    }
  }
  return false;
}

Instance gen_instance(InstanceKind kind, int d, std::uint64_t seed) {
  const KindName& e = entry(kind);
  if (d < e.min_d || d > kMaxGenDimension) {
    throw std::invalid_argument(std::string("unsupported dimension ") + std::to_string(d) +
                                " for " + e.name);
  }
  Rng rng(seed);
  Instance inst = generate(kind, d, rng);
  inst.seed = seed;
  if (!in_family(inst)) throw std::logic_error(std::string("generated instance left family ") + e.name);
  return inst;
}

}  // namespace cubeham
