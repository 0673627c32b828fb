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

#include "cubeham/oracle.hpp"

#include <array>
#include <numeric>
#include <stdexcept>

#include "cubeham/random.hpp"

namespace cubeham {

const char* outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::kYes: return "yes";
    case SearchOutcome::kNo: return "no";
    case SearchOutcome::kBudget: return "budget";
  }
  return "?";
}

namespace {

struct BudgetExhausted {};

class Search {
 public:
  Search(const Matching& m, const SearchConfig& cfg, bool maximize)
      : d_(m.dim()), n_(m.size()), cfg_(cfg), maximize_(maximize), rng_(cfg.seed) {
    if (cfg.node_budget == 0) throw std::invalid_argument("node budget must be positive");
    slot_.resize(n_);
    orig_.assign(n_, kUncovered);
    for (Vertex u = 0; u < n_; ++u) {
      const Slot s = m.slot(u);
      if (s == kMatch) throw std::invalid_argument("MATCH label in an extendability query");
      slot_[u] = s;
      if (s >= 0) orig_[u] = s;
    }
    if (m.terminal_count() % 2 != 0) throw std::invalid_argument("odd number of terminals");
    edges_ = static_cast<long>(m.edge_count());
    terms_ = static_cast<long>(m.terminal_count());
    free_.assign(n_, 0);
    for (Vertex u = 0; u < n_; ++u) {
      for (int i = 1; i <= d_; ++i) {
        if (slot_[u ^ direction_bit(i)] != kForbidden) ++free_[u];
      }
    }
    std::iota(order_.begin(), order_.begin() + d_, 1);
  }

  SearchOutcome run() {
    try {
      if (edges_ == 0 && terms_ == 0) return seeded() ? SearchOutcome::kYes : done();
      return dfs() ? SearchOutcome::kYes : done();
    } catch (const BudgetExhausted&) {
      return SearchOutcome::kBudget;
    }
  }

  std::uint64_t nodes() const { return nodes_; }
  long best() const { return best_; }
  const std::vector<Edge>& best_edges() const { return best_edges_; }
  const std::vector<Edge>& found_edges() const { return found_; }

 private:
  SearchOutcome done() const { return best_ > 0 ? SearchOutcome::kYes : SearchOutcome::kNo; }

  void set(Vertex v, Slot s) {
    journal_.emplace_back(v, slot_[v]);
    assign(v, s);
  }

  void assign(Vertex v, Slot s) {
    const bool was = slot_[v] == kForbidden;
    const bool now = s == kForbidden;
    slot_[v] = s;
    if (was == now) return;
    const int delta = now ? -1 : 1;
    for (int i = 1; i <= d_; ++i) free_[v ^ direction_bit(i)] += delta;
  }

  void rollback(std::size_t mark) {
    while (journal_.size() > mark) {
      const auto [v, s] = journal_.back();
      journal_.pop_back();
      assign(v, s);
    }
  }

  // Cycle with M = {} and no terminals: every cycle contains some cube edge
  // at its smallest vertex, so seed with each such edge in turn.
  bool seeded() {
    for (Vertex a = 0; a < n_; ++a) {
      if (slot_[a] == kForbidden) continue;
      for (int i = 1; i <= d_; ++i) {
        const Vertex b = a ^ direction_bit(i);
        if (slot_[b] == kForbidden) continue;
        const std::size_t mark = journal_.size();
        set(a, static_cast<Slot>(b));
        set(b, static_cast<Slot>(a));
        orig_[a] = static_cast<Slot>(b);
        orig_[b] = static_cast<Slot>(a);
        edges_ = 1;
        const bool ok = dfs();
        if (ok && !maximize_) return true;
        orig_[a] = kUncovered;
        orig_[b] = kUncovered;
        edges_ = 0;
        rollback(mark);
      }
      set(a, kForbidden);
    }
    return false;
  }

  Vertex choose() const {
    Vertex best = n_;
    int best_free = d_ + 1;
    for (Vertex u = 0; u < n_; ++u) {
      const Slot s = slot_[u];
      if (s < 0 && s != kTerminal) continue;
      if (cfg_.selection == VertexSelection::kFirst) return u;
      if (free_[u] < best_free) {
        best_free = free_[u];
        best = u;
        if (best_free == 0) break;
      }
    }
    return best;
  }

  bool is_last(Vertex u, Vertex w) const {
    if (slot_[u] == static_cast<Slot>(w)) {
      return edges_ == 1 && terms_ == 0 && orig_[u] != static_cast<Slot>(w);
    }
    return edges_ == 0 && terms_ == 2 && slot_[u] == kTerminal && slot_[w] == kTerminal;
  }

  bool can_add(Vertex u, Vertex w) const {
    if (slot_[u] == static_cast<Slot>(w)) return false;
    if (slot_[u] == kTerminal && slot_[w] == kTerminal) return terms_ >= 4;
    return true;
  }

  void apply(Vertex u, Vertex w) {
    const Slot su = slot_[u];
    const Slot sw = slot_[w];
    set(u, kForbidden);
    if (su >= 0) {
      const Vertex a = static_cast<Vertex>(su);
      if (sw == kUncovered) {
        set(a, static_cast<Slot>(w));
        set(w, static_cast<Slot>(a));
      } else if (sw >= 0) {
        const Vertex b = static_cast<Vertex>(sw);
        set(w, kForbidden);
        set(a, static_cast<Slot>(b));
        set(b, static_cast<Slot>(a));
        --edges_;
      } else {
        set(w, kForbidden);
        set(a, kTerminal);
        --edges_;
      }
    } else if (sw == kUncovered) {
      set(w, kTerminal);
    } else if (sw >= 0) {
      set(w, kForbidden);
      set(static_cast<Vertex>(sw), kTerminal);
      --edges_;
    } else {
      set(w, kForbidden);
      terms_ -= 2;
    }
    added_.emplace_back(u, w);
  }

  bool dfs() {
    if (++nodes_ > cfg_.node_budget) throw BudgetExhausted{};
    const Vertex u = choose();
    if (u == n_) return false;
    std::array<int, kMaxDimension> order = order_;
    if (cfg_.seed != 0) rng_.shuffle(std::span<int>(order.data(), static_cast<std::size_t>(d_)));
    for (int k = 0; k < d_; ++k) {
      const Vertex w = u ^ direction_bit(order[static_cast<std::size_t>(k)]);
      if (slot_[w] == kForbidden) continue;
      if (is_last(u, w)) {
        if (record(u, w)) return true;
        continue;
      }
      if (!can_add(u, w)) continue;
      const std::size_t mark = journal_.size();
      const long edges = edges_;
      const long terms = terms_;
      apply(u, w);
      const bool ok = dfs();
      if (ok) return true;
      added_.pop_back();
      rollback(mark);
      edges_ = edges;
      terms_ = terms;
    }
    return false;
  }

  // Returns true when the search should stop.
  bool record(Vertex u, Vertex w) {
    long length = static_cast<long>(added_.size()) + 1;
    for (Vertex x = 0; x < n_; ++x) {
      if (orig_[x] >= 0 && x < static_cast<Vertex>(orig_[x])) ++length;
    }
    if (maximize_) {
      if (length > best_) {
        best_ = length;
        best_edges_ = collect(u, w);
      }
      return false;
    }
    best_ = length;
    if (cfg_.want_certificate) found_ = collect(u, w);
    return true;
  }

  std::vector<Edge> collect(Vertex u, Vertex w) const {
    std::vector<Edge> out = added_;
    out.emplace_back(u, w);
    for (Vertex x = 0; x < n_; ++x) {
      if (orig_[x] >= 0 && x < static_cast<Vertex>(orig_[x])) {
        out.emplace_back(x, static_cast<Vertex>(orig_[x]));
      }
    }
    return out;
  }

  int d_;
  Vertex n_;
  SearchConfig cfg_;
  bool maximize_;
  Rng rng_;
  std::vector<Slot> slot_;
  std::vector<Slot> orig_;
  std::vector<int> free_;
  std::vector<std::pair<Vertex, Slot>> journal_;
  std::vector<Edge> added_;
  std::array<int, kMaxDimension> order_{};
  long edges_ = 0;
  long terms_ = 0;
  std::uint64_t nodes_ = 0;
  long best_ = 0;
  std::vector<Edge> best_edges_;
  std::vector<Edge> found_;
};

// Orders the edges of a disjoint union of paths or of a single cycle.
std::vector<std::vector<Vertex>> walk(Vertex n, const std::vector<Edge>& edges, bool closed) {
  std::vector<std::array<Vertex, 2>> adj(n, {n, n});
  std::vector<int> deg(n, 0);
  for (const Edge& e : edges) {
    adj[e.u][static_cast<std::size_t>(deg[e.u]++)] = e.v;
    adj[e.v][static_cast<std::size_t>(deg[e.v]++)] = e.u;
  }
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> seen(n, false);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s] || deg[s] == 0) continue;
    if (!closed && deg[s] != 1) continue;
    std::vector<Vertex> seq;
    Vertex prev = n;
    Vertex cur = s;
    while (cur != n && !seen[cur]) {
      seen[cur] = true;
      seq.push_back(cur);
      const Vertex next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = next;
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace

SearchResult extends(const Matching& m, const SearchConfig& cfg) {
  Search s(m, cfg, /*maximize=*/false);
  SearchResult r;
  r.outcome = s.run();
  r.nodes = s.nodes();
  if (r.outcome == SearchOutcome::kYes && cfg.want_certificate) {
    const bool closed = m.terminal_count() == 0;
    auto seqs = walk(m.size(), s.found_edges(), closed);
    if (closed) {
      r.cycle = std::move(seqs.front());
    } else {
      r.paths = std::move(seqs);
    }
  }
  return r;
}

LengthResult max_cycle_length(const Matching& m, const SearchConfig& cfg) {
  if (m.terminal_count() != 0) throw std::invalid_argument("cycle length query with terminals");
  Search s(m, cfg, /*maximize=*/true);
  LengthResult r;
  const SearchOutcome o = s.run();
  r.nodes = s.nodes();
  r.exhaustive = o != SearchOutcome::kBudget;
  if (s.best() > 0) {
    r.length = static_cast<std::size_t>(s.best());
    r.cycle = walk(m.size(), s.best_edges(), true).front();
  }
  return r;
}

}  // namespace cubeham
