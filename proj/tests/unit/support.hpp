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

// Reference implementations written from the definitions, sharing no code
// with the library beyond the Matching container.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubeham/matching.hpp"
#include "cubeham/random.hpp"

namespace naive {

using cubeham::Matching;
using cubeham::Vertex;

inline int popcount(Vertex v) {
  int c = 0;
  for (; v; v &= v - 1) ++c;
  return c;
}

inline bool bit(Vertex v, int i) { return ((v >> (i - 1)) & 1u) != 0; }

// Half-layer of Q_d in direction i whose lower endpoints have parity p.
inline bool has_half_layer(const Matching& m, int i, int p) {
  for (Vertex u = 0; u < m.size(); ++u) {
    if (bit(u, i) || popcount(u) % 2 != p) continue;
    const Vertex w = u | (Vertex{1} << (i - 1));
    if (!m.covered(u) || m.partner(u) != w) return false;
  }
  return true;
}

// Number of edges of that half-layer missing from m.
inline int half_layer_deficit(const Matching& m, int i, int p) {
  int missing = 0;
  for (Vertex u = 0; u < m.size(); ++u) {
    if (bit(u, i) || popcount(u) % 2 != p) continue;
    const Vertex w = u | (Vertex{1} << (i - 1));
    if (!m.covered(u) || m.partner(u) != w) ++missing;
  }
  return missing;
}

// Property (H) for z, unfolded from its definition.
inline bool property_h(const Matching& m, Vertex z) {
  const int d = m.dim();
  for (int i = 1; i <= d; ++i) {
    bool layer = false;
    for (int p = 0; p < 2; ++p) {
      // Translate so z becomes 0: u -> u ^ z.
      bool all = true;
      for (Vertex u0 = 0; u0 < m.size() && all; ++u0) {
        if (bit(u0, i) || popcount(u0) % 2 != p) continue;
        const Vertex a = u0 ^ z;
        const Vertex b = a ^ (Vertex{1} << (i - 1));
        all = m.covered(a) && m.partner(a) == b;
      }
      layer = layer || all;
    }
    if (!layer) continue;
    bool free_vertex = false;
    for (Vertex u0 = 1; u0 < m.size(); ++u0) {
      if (bit(u0, i)) continue;
      if (!m.covered(u0 ^ z)) free_vertex = true;
    }
    if (!free_vertex) return false;
  }
  return true;
}

inline long cut(const Matching& m, int i) {
  long c = 0;
  for (Vertex u = 0; u < m.size(); ++u) {
    if (m.covered(u) && !bit(u, i) && bit(m.partner(u), i)) ++c;
  }
  return c;
}

// Validity of a closed walk as an extension of m avoiding `avoided`.
inline bool cycle_ok(const Matching& m, const std::vector<Vertex>& c, const std::vector<Vertex>& avoided) {
  const std::size_t k = c.size();
  if (k < 3) return false;
  std::set<Vertex> seen(c.begin(), c.end());
  if (seen.size() != k) return false;
  for (Vertex v : c) {
    if (v >= m.size()) return false;
    if (std::find(avoided.begin(), avoided.end(), v) != avoided.end()) return false;
  }
  std::size_t matched = 0;
  for (std::size_t a = 0; a < k; ++a) {
    const Vertex u = c[a];
    const Vertex v = c[(a + 1) % k];
    if (m.covered(u) && m.partner(u) == v) {
      ++matched;
    } else if (popcount(u ^ v) != 1) {
      return false;
    }
  }
  // Two-cycles count their single edge twice.
  return matched == m.edge_count();
}

// Exhaustive search for a cycle extending m (cube edges outside m) that
// avoids every vertex in `avoided`. Exponential; small d only.
class CycleSearch {
 public:
  CycleSearch(const Matching& m, std::vector<Vertex> avoided)
      : m_(m), avoided_(std::move(avoided)), used_(m.size(), false) {}

  std::optional<std::vector<Vertex>> find() {
    for (Vertex v : avoided_) used_[v] = true;
    std::vector<Vertex> starts;
    if (m_.edge_count() > 0) {
      for (Vertex v = 0; v < m_.size() && starts.empty(); ++v) {
        if (m_.covered(v)) starts.push_back(v);
      }
    } else {
      for (Vertex v = 0; v < m_.size(); ++v) {
        if (!used_[v]) starts.push_back(v);
      }
    }
    for (Vertex s : starts) {
      start_ = s;
      path_ = {s};
      used_[s] = true;
      if (m_.covered(s)) {
        const Vertex t = m_.partner(s);
        if (!used_[t]) {
          used_[t] = true;
          path_.push_back(t);
          if (walk(1)) return path_;
          used_[t] = false;
          path_.pop_back();
        }
      } else if (walk(0)) {
        return path_;
      }
      used_[s] = false;
      if (m_.edge_count() == 0) continue;
    }
    return std::nullopt;
  }

 private:
  // At the path end, the next step is a cube edge not in m.
  bool walk(std::size_t matched) {
    const Vertex v = path_.back();
    const int d = m_.dim();
    for (int i = 1; i <= d; ++i) {
      const Vertex w = v ^ (Vertex{1} << (i - 1));
      if (m_.covered(v) && m_.partner(v) == w) continue;
      if (w == start_ && path_.size() >= 3 && matched == m_.edge_count()) return true;
      if (used_[w]) continue;
      // With no matching edges, only cycles through their smallest vertex.
      if (m_.edge_count() == 0 && w < start_) continue;
      used_[w] = true;
      path_.push_back(w);
      bool ok = false;
      if (m_.covered(w)) {
        const Vertex x = m_.partner(w);
        if (x == start_) {
          ok = path_.size() >= 3 && matched + 1 == m_.edge_count();
        } else if (!used_[x]) {
          used_[x] = true;
          path_.push_back(x);
          ok = walk(matched + 1);
          if (!ok) {
            used_[x] = false;
            path_.pop_back();
          }
        }
      } else {
        ok = walk(matched);
      }
      if (ok) return true;
      used_[w] = false;
      path_.pop_back();
    }
    return false;
  }

  const Matching& m_;
  std::vector<Vertex> avoided_;
  std::vector<bool> used_;
  std::vector<Vertex> path_;
  Vertex start_ = 0;
};

inline std::optional<std::vector<Vertex>> find_cycle(const Matching& m, std::vector<Vertex> avoided = {}) {
  return CycleSearch(m, std::move(avoided)).find();
}

// Random matching of K(Q_d) with roughly `density` of the vertices covered.
inline Matching random_matching(int d, cubeham::Rng& rng, double density = 0.5) {
  Matching m(d);
  std::vector<Vertex> vs;
  for (Vertex v = 0; v < m.size(); ++v) {
    if (rng.below(1000) < static_cast<std::uint64_t>(density * 1000)) vs.push_back(v);
  }
  rng.shuffle(std::span<Vertex>(vs));
  for (std::size_t k = 0; k + 1 < vs.size(); k += 2) m.add_edge(vs[k], vs[k + 1]);
  return m;
}

inline Matching random_cube_matching(int d, cubeham::Rng& rng) {
  Matching m(d);
  const Vertex n = m.size();
  for (int t = 0; t < static_cast<int>(n); ++t) {
    const Vertex u = static_cast<Vertex>(rng.below(n));
    const Vertex v = u ^ (Vertex{1} << rng.below(static_cast<std::uint64_t>(d)));
    if (!m.covered(u) && !m.covered(v)) m.add_edge(u, v);
  }
  return m;
}

// Up to `count` extra cube edges on uncovered pairs.
inline void add_random_cube_edges(Matching& m, std::size_t count, cubeham::Rng& rng) {
  const Vertex n = m.size();
  for (std::size_t added = 0, tries = 0; added < count && tries < 64 * (count + 1); ++tries) {
    const Vertex u = static_cast<Vertex>(rng.below(n));
    const Vertex v = u ^ (Vertex{1} << rng.below(static_cast<std::uint64_t>(m.dim())));
    if (m.slot(u) == cubeham::kUncovered && m.slot(v) == cubeham::kUncovered) {
      m.add_edge(u, v);
      ++added;
    }
  }
}

// Minimal DOT reader: `graph|digraph [id] { stmt* }` with node and edge
// statements and [k=v, ...] attribute lists. Throws on a syntax error.
struct DotGraph {
  bool directed = false;
  std::map<std::string, std::map<std::string, std::string>> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::map<std::string, std::string>> edge_attrs;
};

class DotParser {
 public:
  explicit DotParser(std::string text) : s_(std::move(text)) {}

  DotGraph parse() {
    DotGraph g;
    const std::string kind = ident();
    if (kind == "digraph") {
      g.directed = true;
    } else if (kind != "graph") {
      throw std::runtime_error("expected graph or digraph");
    }
    skip();
    if (peek() != '{') ident();
    expect('{');
    while (true) {
      skip();
      if (peek() == '}') break;
      statement(g);
    }
    expect('}');
    skip();
    if (pos_ != s_.size()) throw std::runtime_error("trailing input");
    return g;
  }

 private:
  void statement(DotGraph& g) {
    const std::string first = ident();
    skip();
    if (first == "node" || first == "edge" || first == "graph") {
      if (peek() == '[') attributes();
    } else if (starts_with_edge_op()) {
      std::string prev = first;
      std::vector<std::pair<std::string, std::string>> chain;
      while (starts_with_edge_op()) {
        pos_ += 2;
        const std::string next = ident();
        chain.emplace_back(prev, next);
        prev = next;
        skip();
      }
      std::map<std::string, std::string> attrs;
      if (peek() == '[') attrs = attributes();
      for (auto& e : chain) {
        g.edges.push_back(e);
        g.edge_attrs.push_back(attrs);
        g.nodes[e.first];
        g.nodes[e.second];
      }
    } else {
      auto& node = g.nodes[first];
      if (peek() == '[') {
        for (auto& [k, v] : attributes()) node[k] = v;
      }
    }
    skip();
    if (peek() == ';') ++pos_;
  }

  bool starts_with_edge_op() {
    skip();
    return s_.compare(pos_, 2, "--") == 0 || s_.compare(pos_, 2, "->") == 0;
  }

  std::map<std::string, std::string> attributes() {
    std::map<std::string, std::string> out;
    expect('[');
    while (true) {
      skip();
      if (peek() == ']') break;
      const std::string k = ident();
      expect('=');
      out[k] = ident();
      skip();
      if (peek() == ',' || peek() == ';') ++pos_;
    }
    expect(']');
    return out;
  }

  std::string ident() {
    skip();
    if (pos_ >= s_.size()) throw std::runtime_error("unexpected end of input");
    if (s_[pos_] == '"') {
      const std::size_t end = s_.find('"', pos_ + 1);
      if (end == std::string::npos) throw std::runtime_error("unterminated string");
      std::string out = s_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return out;
    }
    const std::size_t begin = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '.')) {
      ++pos_;
    }
    if (begin == pos_) throw std::runtime_error("expected identifier at " + std::to_string(pos_));
    return s_.substr(begin, pos_ - begin);
  }

  void expect(char c) {
    skip();
    if (peek() != c) throw std::runtime_error(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace naive
