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

#include "cubeham/constructors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cubeham/layers.hpp"

namespace cubeham {

bool has_layer(const Matching& m, LayerMode mode) {
  if (m.dim() < 2) return false;
  const LayerIndex index(m);
  const int limit = mode == LayerMode::kHalf ? 0 : 1;
  for (int i = 1; i <= m.dim(); ++i) {
    for (int p = 0; p < 2; ++p) {
      if (index.deficit(LayerId{i, p, std::nullopt}) <= limit) return true;
    }
  }
  return false;
}

std::vector<Edge> avoid_layer_completion(const Matching& m, std::span<const Vertex> a,
                                         LayerMode mode) {
  if (m.dim() < 4) throw std::invalid_argument("layer-avoiding completion needs d >= 4");
  if (a.size() < 4) throw std::invalid_argument("vertex set must have at least 4 vertices");
  if (a.size() % 2 != 0) throw std::invalid_argument("vertex set must have even size");
  for (Vertex x : a) {
    if (x >= m.size()) throw std::out_of_range("vertex out of range");
    if (m.covered(x)) {
      throw std::invalid_argument("vertex " + std::to_string(x) + " is covered by the matching");
    }
  }
  if (has_layer(m, mode)) {
    throw std::invalid_argument(mode == LayerMode::kHalf ? "matching contains a half-layer"
                                                         : "matching contains a near half-layer");
  }
  std::vector<Vertex> rest(a.begin(), a.end());
  std::sort(rest.begin(), rest.end());
  if (std::adjacent_find(rest.begin(), rest.end()) != rest.end()) {
    throw std::invalid_argument("vertex set has duplicates");
  }

  Matching work = m;
  std::vector<Edge> p;
  auto take = [&](Vertex x, Vertex y) {
    work.add_edge(x, y);
    p.emplace_back(x, y);
    std::erase(rest, x);
    std::erase(rest, y);
  };

  while (rest.size() >= 6) {
    bool done = false;
    for (std::size_t s = 0; s < rest.size() && !done; ++s) {
      for (std::size_t t = s + 1; t < rest.size(); ++t) {
        if (parity(rest[s]) == parity(rest[t])) {
          take(rest[s], rest[t]);
          done = true;
          break;
        }
      }
    }
  }

  std::vector<Vertex> even;
  std::vector<Vertex> odd;
  for (Vertex x : rest) (parity(x) == 0 ? even : odd).push_back(x);
  if (even.size() == 4 || odd.size() == 4) {
    take(rest[0], rest[1]);
    take(rest[0], rest[1]);
    return p;
  }
  if (even.size() == 2) {
    take(even[0], even[1]);
    take(odd[0], odd[1]);
    return p;
  }
  const Vertex lone = even.size() == 1 ? even[0] : odd[0];
  const std::vector<Vertex> others = even.size() == 1 ? odd : even;
  auto finish = [&](Vertex mate) {
    std::vector<Vertex> left;
    for (Vertex x : others) {
      if (x != mate) left.push_back(x);
    }
    take(lone, mate);
    take(left[0], left[1]);
  };
  for (Vertex x : others) {
    if (distance(lone, x) != 1) {
      finish(x);
      return p;
    }
  }
  for (Vertex x : others) {
    Matching trial = work;
    trial.add_edge(lone, x);
    if (!has_layer(trial, mode)) {
      finish(x);
      return p;
    }
  }
  throw std::logic_error("no layer-free pairing of the last four vertices");
}

Matching shorten_matching(const Matching& m) {
  if (!m.is_maximal()) throw std::invalid_argument("matching is not maximal");
  Matching out = m;
  const int d = m.dim();
  auto free_neighbor = [&](Vertex x) -> std::optional<Vertex> {
    for (int i = 1; i <= d; ++i) {
      const Vertex y = x ^ direction_bit(i);
      if (out.slot(y) == kUncovered) return y;
    }
    return std::nullopt;
  };
  while (true) {
    std::optional<Edge> longest;
    for (Vertex u = 0; u < out.size() && !longest; ++u) {
      if (out.covered(u) && u < out.partner(u) && distance(u, out.partner(u)) >= 2) {
        longest = Edge(u, out.partner(u));
      }
    }
    if (!longest) break;
    out.remove_edge(longest->u);
    for (Vertex x : {longest->u, longest->v}) {
      if (out.covered(x)) continue;
      if (auto y = free_neighbor(x)) out.add_edge(x, *y);
    }
  }
  if (!out.is_maximal()) throw std::logic_error("shortened matching lost maximality");
  return out;
}

Matching extend_to_maximal(const Matching& m, std::span<const Vertex> forbidden, EdgeMode mode) {
  Matching out = m;
  std::vector<bool> blocked(m.size(), false);
  for (Vertex x : forbidden) {
    if (x >= m.size()) throw std::out_of_range("vertex out of range");
    blocked[x] = true;
  }
  auto usable = [&](Vertex x) { return !blocked[x] && out.slot(x) == kUncovered; };
  for (Vertex u = 0; u < out.size(); ++u) {
    for (int i = 1; i <= out.dim() && usable(u); ++i) {
      const Vertex v = u ^ direction_bit(i);
      if (usable(v)) out.add_edge(u, v);
    }
  }
  if (mode == EdgeMode::kAny) {
    for (Vertex u = 0; u < out.size(); ++u) {
      if (!usable(u)) continue;
      for (Vertex v = u + 1; v < out.size(); ++v) {
        if (usable(v) && parity(u) == parity(v)) {
          out.add_edge(u, v);
          break;
        }
      }
    }
  }
  return out;
}

BoundF bound_f(int d) {
  if (d < 2 || d > 40) throw std::invalid_argument("bound_f needs 2 <= d <= 40");
  BoundF b;
  const std::int64_t num = static_cast<std::int64_t>(d) << d;
  const std::int64_t den = 3 * static_cast<std::int64_t>(d) - 1;
  const std::int64_t g = std::gcd(num, den);
  b.numerator = num / g;
  b.denominator = den / g;
  b.ceil_f = (num + den - 1) / den;
  const std::int64_t per = std::int64_t{1} << d;  // f(d)/d = 2^d / (3d - 1)
  b.ceil_f_over_d = (per + den - 1) / den;
  return b;
}

}  // namespace cubeham
