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

#include "cubeham/generate.hpp"

#include <stdexcept>
#include <unordered_set>

namespace cubeham {

namespace {

void check_match_count(const Matching& seed) {
  if (seed.vertices_with(kMatch).size() % 2 != 0) {
    throw std::invalid_argument("odd number of MATCH vertices");
  }
}

std::optional<Vertex> first_match(const Matching& m) {
  for (Vertex u = 0; u < m.size(); ++u) {
    if (m.slot(u) == kMatch) return u;
  }
  return std::nullopt;
}

// Pairs the first kMatch vertex of m with every later one.
void expand_round(const Matching& m, std::vector<Matching>& out) {
  const auto u = first_match(m);
  if (!u) {
    out.push_back(m);
    return;
  }
  for (Vertex v = *u + 1; v < m.size(); ++v) {
    if (m.slot(v) != kMatch) continue;
    Matching child = m;
    child.set_label(*u, kUncovered);
    child.set_label(v, kUncovered);
    child.add_edge(*u, v);
    out.push_back(std::move(child));
  }
}

std::vector<Matching> dedup(std::vector<Matching> batch, const DirectionGroup& group, Exec exec) {
  const auto forms = canonicalize_batch(batch, group, exec);
  std::unordered_set<CanonicalForm> seen;
  std::vector<Matching> out;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    if (seen.insert(forms[k]).second) out.push_back(std::move(batch[k]));
  }
  return out;
}

void dfs_match(Matching& m, const MatchingSink& sink) {
  const auto u = first_match(m);
  if (!u) {
    sink(m);
    return;
  }
  m.set_label(*u, kUncovered);
  for (Vertex v = *u + 1; v < m.size(); ++v) {
    if (m.slot(v) != kMatch) continue;
    m.set_label(v, kUncovered);
    m.add_edge(*u, v);
    dfs_match(m, sink);
    m.remove_edge(*u);
    m.set_label(v, kMatch);
  }
  m.set_label(*u, kMatch);
}

void dfs_all(Matching& m, Vertex from, const MatchingSink& sink) {
  Vertex u = from;
  while (u < m.size() && m.slot(u) != kUncovered) ++u;
  if (u >= m.size()) {
    sink(m);
    return;
  }
  // u stays uncovered.
  m.set_label(u, kForbidden);
  dfs_all(m, u + 1, sink);
  m.set_label(u, kUncovered);
  for (Vertex v = u + 1; v < m.size(); ++v) {
    if (m.slot(v) != kUncovered) continue;
    m.add_edge(u, v);
    dfs_all(m, u + 1, sink);
    m.remove_edge(u);
  }
}

}  // namespace

std::vector<Matching> generate_matchings_bfs(const Matching& seed, const DirectionGroup* group,
                                             Exec exec) {
  check_match_count(seed);
  std::vector<Matching> current{seed};
  const std::size_t rounds = seed.vertices_with(kMatch).size() / 2;
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<Matching> next;
    for (const Matching& m : current) expand_round(m, next);
    current = group ? dedup(std::move(next), *group, exec) : std::move(next);
  }
  return current;
}

void generate_matchings_dfs(const Matching& seed, const MatchingSink& on_complete) {
  check_match_count(seed);
  Matching work = seed;
  dfs_match(work, on_complete);
}

void generate_matchings_hybrid(const Matching& seed, const DirectionGroup& group,
                               std::size_t max_frontier, const MatchingSink& on_complete,
                               Exec exec) {
  check_match_count(seed);
  std::vector<Matching> current{seed};
  while (first_match(current.front())) {
    std::vector<Matching> next;
    for (const Matching& m : current) expand_round(m, next);
    if (next.size() > max_frontier) break;
    current = dedup(std::move(next), group, exec);
  }
  for (const Matching& m : current) generate_matchings_dfs(m, on_complete);
}

std::size_t for_each_matching_class(const Matching& seed, const DirectionGroup& group,
                                    const MatchingSink& on_class, Exec exec) {
  for (Vertex u = 0; u < seed.size(); ++u) {
    const Slot s = seed.slot(u);
    if (s == kTerminal || s == kMatch) {
      throw std::invalid_argument("seed may only carry edges and FORBIDDEN labels");
    }
  }
  std::vector<Matching> level{seed};
  std::size_t total = 0;
  while (!level.empty()) {
    for (const Matching& m : level) on_class(m);
    total += level.size();
    std::vector<Matching> next;
    for (const Matching& m : level) {
      for (Vertex u = 0; u < m.size(); ++u) {
        if (m.slot(u) != kUncovered) continue;
        for (Vertex v = u + 1; v < m.size(); ++v) {
          if (m.slot(v) != kUncovered) continue;
          Matching child = m;
          child.add_edge(u, v);
          next.push_back(std::move(child));
        }
      }
    }
    level = dedup(std::move(next), group, exec);
  }
  return total;
}

void for_each_matching_dfs(const Matching& seed, const MatchingSink& on_matching) {
  Matching work = seed;
  // Vertices left single are marked kForbidden during the walk; restore them
  // for the callback.
  dfs_all(work, 0, [&](const Matching& m) {
    Matching out = m;
    for (Vertex u = 0; u < out.size(); ++u) {
      if (out.slot(u) == kForbidden && seed.slot(u) != kForbidden) out.set_label(u, kUncovered);
    }
    on_matching(out);
  });
}

}  // namespace cubeham
