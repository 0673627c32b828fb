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

#include "cubeham/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cubeham {

namespace {

std::uint32_t code(Slot s, std::span<const Vertex> map) {
  if (s >= 0) return map[static_cast<Vertex>(s)] + 4;
  return static_cast<std::uint32_t>(-1 - s);  // kForbidden 0 ... kMatch 3
}

std::size_t width(int d) { return d <= 7 ? 1 : 4; }

void put(CanonicalForm& out, std::size_t pos, std::uint32_t c, std::size_t w) {
  if (w == 1) {
    out[pos] = static_cast<char>(c);
    return;
  }
  for (std::size_t b = 0; b < 4; ++b) out[pos * 4 + b] = static_cast<char>(c >> (8 * (3 - b)));
}

}  // namespace

DirectionGroup::DirectionGroup(int d, std::span<const int> fixed_directions,
                               bool with_translations)
    : d_(d) {
  check_dimension(d);
  if (d > 10) throw std::invalid_argument("direction group too large");
  std::vector<bool> fixed(static_cast<std::size_t>(d + 1), false);
  for (int i : fixed_directions) {
    if (i < 1 || i > d) throw std::out_of_range("fixed direction out of range");
    fixed[static_cast<std::size_t>(i)] = true;
  }
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 1);
  const Vertex n = vertex_count(d);
  do {
    bool ok = true;
    for (int i = 1; i <= d; ++i) {
      if (fixed[static_cast<std::size_t>(i)] && perm[static_cast<std::size_t>(i - 1)] != i) ok = false;
    }
    if (!ok) continue;
    std::vector<Vertex> base(n);
    for (Vertex x = 0; x < n; ++x) {
      Vertex y = 0;
      for (int i = 1; i <= d; ++i) {
        if (has_direction(x, i)) y |= direction_bit(perm[static_cast<std::size_t>(i - 1)]);
      }
      base[x] = y;
    }
    const Vertex shifts = with_translations ? n : 1;
    for (Vertex t = 0; t < shifts; ++t) {
      std::vector<Vertex> map(n);
      std::vector<Vertex> inv(n);
      for (Vertex x = 0; x < n; ++x) {
        map[x] = base[x] ^ t;
        inv[map[x]] = x;
      }
      maps_.push_back(std::move(map));
      inverse_.push_back(std::move(inv));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

Matching apply_automorphism(const Matching& m, std::span<const Vertex> map) {
  Matching out(m.dim());
  for (Vertex u = 0; u < m.size(); ++u) {
    const Slot s = m.slot(u);
    if (s >= 0) {
      if (u < m.partner(u)) out.add_edge(map[u], map[m.partner(u)]);
    } else if (s != kUncovered) {
      out.set_label(map[u], s);
    }
  }
  return out;
}

CanonicalForm encode(const Matching& m) {
  const std::size_t w = width(m.dim());
  CanonicalForm out(m.size() * w, '\0');
  std::vector<Vertex> id(m.size());
  std::iota(id.begin(), id.end(), Vertex{0});
  for (Vertex u = 0; u < m.size(); ++u) put(out, u, code(m.slot(u), id), w);
  return out;
}

CanonicalForm canonical_form(const Matching& m, const DirectionGroup& group) {
  if (group.dim() != m.dim()) throw std::invalid_argument("group dimension mismatch");
  const Vertex n = m.size();
  const std::size_t w = width(m.dim());
  // Codes of the current best image, compared position by position so most
  // group elements are rejected after a few slots.
  std::vector<std::uint32_t> best(n);
  {
    const auto map = group.map(0);
    const auto& inv = group.inverse_[0];
    for (Vertex y = 0; y < n; ++y) best[y] = code(m.slot(inv[y]), map);
  }
  for (std::size_t g = 1; g < group.size(); ++g) {
    const auto map = group.map(g);
    const auto& inv = group.inverse_[g];
    Vertex y = 0;
    std::uint32_t c = 0;
    for (; y < n; ++y) {
      c = code(m.slot(inv[y]), map);
      if (c != best[y]) break;
    }
    if (y == n || c > best[y]) continue;
    best[y] = c;
    for (++y; y < n; ++y) best[y] = code(m.slot(inv[y]), map);
  }
  CanonicalForm out(n * w, '\0');
  for (Vertex y = 0; y < n; ++y) put(out, y, best[y], w);
  return out;
}

CanonicalForm canonical_form(const Matching& m, std::span<const int> fixed_directions) {
  if (fixed_directions.size() > 2) throw std::invalid_argument("at most two fixed directions");
  return canonical_form(m, DirectionGroup(m.dim(), fixed_directions));
}

}  // namespace cubeham
