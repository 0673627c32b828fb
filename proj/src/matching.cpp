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

#include "cubeham/matching.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace cubeham {

Matching::Matching(int d) : d_(d) {
  check_dimension(d);
  slots_.assign(vertex_count(d), kUncovered);
}

Matching Matching::from_edges(int d, std::span<const Edge> edges) {
  Matching m(d);
  for (const Edge& e : edges) m.add_edge(e);
  return m;
}

std::optional<Vertex> Matching::partner_of(Vertex u) const {
  if (!covered(u)) return std::nullopt;
  return partner(u);
}

void Matching::add_edge(Vertex u, Vertex v) {
  if (u >= size() || v >= size()) throw std::out_of_range("vertex out of range");
  if (u == v) throw std::invalid_argument("self-loop in matching");
  for (Vertex x : {u, v}) {
    const Slot s = slots_[x];
    if (s >= 0 || s == kForbidden) {
      throw std::invalid_argument("vertex " + std::to_string(x) + " is not free");
    }
    if (s == kTerminal) --terminal_count_;
  }
  slots_[u] = static_cast<Slot>(v);
  slots_[v] = static_cast<Slot>(u);
  ++edge_count_;
  check_invariants();
}

void Matching::remove_edge(Vertex u) {
  if (!covered(u)) throw std::invalid_argument("vertex is not covered");
  const Vertex v = partner(u);
  slots_[u] = kUncovered;
  slots_[v] = kUncovered;
  --edge_count_;
  check_invariants();
}

void Matching::set_label(Vertex u, Slot label) {
  if (label >= 0) throw std::invalid_argument("set_label expects a sentinel");
  if (covered(u)) throw std::invalid_argument("cannot relabel a covered vertex");
  if (slots_[u] == kTerminal) --terminal_count_;
  if (label == kTerminal) ++terminal_count_;
  slots_[u] = label;
}

std::vector<Edge> Matching::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u) {
    if (covered(u) && u < partner(u)) out.emplace_back(u, partner(u));
  }
  return out;
}

std::vector<Vertex> Matching::vertices_with(Slot label) const {
  std::vector<Vertex> out;
  for (Vertex u = 0; u < size(); ++u) {
    if (slots_[u] == label) out.push_back(u);
  }
  return out;
}

bool Matching::all_cube_edges() const {
  for (Vertex u = 0; u < size(); ++u) {
    if (covered(u) && distance(u, partner(u)) != 1) return false;
  }
  return true;
}

bool Matching::is_maximal() const {
  for (Vertex u = 0; u < size(); ++u) {
    if (covered(u) || slots_[u] == kForbidden) continue;
    for (int i = 1; i <= d_; ++i) {
      const Vertex v = u ^ direction_bit(i);
      if (!covered(v) && slots_[v] != kForbidden) return false;
    }
  }
  return true;
}

bool Matching::is_consistent() const {
  std::size_t partners = 0;
  std::size_t terminals = 0;
  for (Vertex u = 0; u < size(); ++u) {
    const Slot s = slots_[u];
    if (s >= 0) {
      if (static_cast<Vertex>(s) >= size() || static_cast<Vertex>(s) == u) return false;
      if (slots_[static_cast<Vertex>(s)] != static_cast<Slot>(u)) return false;
      ++partners;
    } else if (s == kTerminal) {
      ++terminals;
    } else if (s < kMatch) {
      return false;
    }
  }
  return partners == 2 * edge_count_ && terminals == terminal_count_;
}

void Matching::check_invariants() const {
#ifndef NDEBUG
  assert(is_consistent());
#endif
}

Matching translate(const Matching& m, Vertex t) {
  Matching out(m.dim());
  for (Vertex u = 0; u < m.size(); ++u) {
    const Slot s = m.slot(u);
    if (s >= 0) {
      if (u < m.partner(u)) out.add_edge(u ^ t, m.partner(u) ^ t);
    } else if (s != kUncovered) {
      out.set_label(u ^ t, s);
    }
  }
  return out;
}

std::vector<Edge> restrict_edges(std::span<const Edge> edges, int i, int b) {
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (has_direction(e.u, i) == (b != 0) && has_direction(e.v, i) == (b != 0)) {
      out.emplace_back(compress(e.u, i), compress(e.v, i));
    }
  }
  return out;
}

}  // namespace cubeham
