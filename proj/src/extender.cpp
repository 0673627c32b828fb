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

#include "cubeham/extender.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "cubeham/constructors.hpp"

namespace cubeham {

std::set<std::string> CaseTrace::tags() const {
  std::set<std::string> out;
  for (const TraceLevel& lv : levels) {
    if (!lv.u_case.empty()) out.insert(lv.u_case);
    if (!lv.p0_case.empty()) out.insert(lv.p0_case);
    if (lv.p0_case == "bii'" || lv.p0_case == "bii''") out.insert("bii");
  }
  return out;
}

namespace {

using Cycle = std::vector<Vertex>;

struct Ctx {
  const ExtendOptions& opts;
  CaseTrace& trace;
};

[[noreturn]] void fail(const Ctx& ctx, const std::string& what) {
  throw ConstructionError(what, ctx.trace);
}

void require(const Ctx& ctx, bool ok, const char* what) {
  if (!ok) fail(ctx, what);
}

std::size_t open_level(Ctx& ctx, const char* step, int d) {
  TraceLevel lv;
  lv.step = step;
  lv.dim = d;
  ctx.trace.levels.push_back(std::move(lv));
  return ctx.trace.levels.size() - 1;
}

Cycle run_oracle(const Matching& m, Ctx& ctx, const char* what) {
  SearchConfig cfg = ctx.opts.oracle;
  cfg.want_certificate = true;
  const SearchResult r = extends(m, cfg);
  if (r.outcome == SearchOutcome::kBudget) {
    throw BudgetError(std::string("node budget exhausted in base case: ") + what);
  }
  if (r.outcome == SearchOutcome::kNo) fail(ctx, std::string("base case has no extension: ") + what);
  return r.cycle;
}

// Edges of n inside Q^i_b plus `extra` (full coordinates), as a matching of Q_{d-1}.
Matching side_matching(const Matching& n, int i, int b, const std::vector<Edge>& extra) {
  const auto all = n.edges();
  auto inside = restrict_edges(all, i, b);
  for (const Edge& e : extra) inside.emplace_back(compress(e.u, i), compress(e.v, i));
  return Matching::from_edges(n.dim() - 1, inside);
}

Cycle lift(Cycle c, int i, int b) {
  for (Vertex& v : c) v = expand(v, i, b);
  return c;
}

bool visits(const Cycle& c, Vertex x) { return std::find(c.begin(), c.end(), x) != c.end(); }

bool crosses(const Matching& n, Vertex x, int i) {
  return n.covered(x) && has_direction(x, i) != has_direction(n.partner(x), i);
}

// Endpoints on side b of the edges of n crossing direction i, ascending.
std::vector<Vertex> crossing_ends(const Matching& n, int i, int b) {
  std::vector<Vertex> out;
  for (Vertex x = 0; x < n.size(); ++x) {
    if (has_direction(x, i) == (b != 0) && crosses(n, x, i)) out.push_back(x);
  }
  return out;
}

struct Shortcuts {
  std::vector<Edge> edges;             // on side 1
  std::map<Edge, Cycle> segments;      // side-0 path replacing each edge
};

// Cuts c0 at the edges of p0 and joins the ends of each remaining segment
// through their crossing partners.
Shortcuts shortcuts(const Cycle& c0, const std::vector<Edge>& p0, const Matching& n, int i,
                    const Ctx& ctx) {
  const std::unordered_set<Edge, EdgeHash> cut(p0.begin(), p0.end());
  const std::size_t k = c0.size();
  auto is_cut = [&](std::size_t pos) { return cut.count(Edge(c0[pos % k], c0[(pos + 1) % k])) > 0; };
  std::size_t start = 0;
  while (start < k && !is_cut(start)) ++start;
  require(ctx, start < k, "side cycle misses the pairing edges");
  Shortcuts out;
  Cycle seg;
  std::size_t found = 0;
  for (std::size_t step = 1; step <= k; ++step) {
    const std::size_t pos = start + step;
    seg.push_back(c0[pos % k]);
    if (is_cut(pos)) {
      ++found;
      const Vertex s = seg.front();
      const Vertex t = seg.back();
      require(ctx, seg.size() >= 2 && crosses(n, s, i) && crosses(n, t, i),
              "segment ends are not crossing vertices");
      const Edge e(n.partner(s), n.partner(t));
      out.edges.push_back(e);
      out.segments.emplace(e, std::move(seg));
      seg.clear();
    }
  }
  require(ctx, found == p0.size(), "side cycle misses the pairing edges");
  return out;
}

// Replaces every shortcut edge of c1 by its segment.
Cycle stitch(const Cycle& c1, const Shortcuts& sc, const Matching& n, const Ctx& ctx) {
  Cycle out;
  std::size_t used = 0;
  const std::size_t k = c1.size();
  for (std::size_t p = 0; p < k; ++p) {
    const Vertex x = c1[p];
    const Vertex y = c1[(p + 1) % k];
    out.push_back(x);
    const auto it = sc.segments.find(Edge(x, y));
    if (it == sc.segments.end()) continue;
    ++used;
    const Cycle& seg = it->second;
    if (n.partner(seg.front()) == x) {
      out.insert(out.end(), seg.begin(), seg.end());
    } else {
      out.insert(out.end(), seg.rbegin(), seg.rend());
    }
  }
  require(ctx, used == sc.edges.size(), "other side cycle misses a shortcut edge");
  return out;
}

// Puts `inner` between the consecutive vertices a and b of c (in that order
// when walking from a to b).
void insert_between(Cycle& c, Vertex a, Vertex b, const std::vector<Vertex>& inner,
                    const Ctx& ctx) {
  const std::size_t k = c.size();
  for (std::size_t p = 0; p < k; ++p) {
    const Vertex x = c[p];
    const Vertex y = c[(p + 1) % k];
    if (Edge(x, y) != Edge(a, b)) continue;
    std::vector<Vertex> ins = inner;
    if (x != a) std::reverse(ins.begin(), ins.end());
    c.insert(c.begin() + static_cast<std::ptrdiff_t>(p + 1), ins.begin(), ins.end());
    return;
  }
  fail(ctx, "cycle misses the edge to be subdivided");
}

// Pairing of `rest` (full coordinates, side 0 of i) that keeps the side-0
// part of n plus `fixed` free of half-layers. Returns fixed + pairing.
std::vector<Edge> complete_pairing(const Matching& n, int i, std::vector<Edge> fixed,
                                   const std::vector<Vertex>& rest, const Ctx& ctx) {
  const Matching sub = side_matching(n, i, 0, fixed);
  if (rest.size() >= 4) {
    std::vector<Vertex> a;
    for (Vertex x : rest) a.push_back(compress(x, i));
    for (const Edge& e : avoid_layer_completion(sub, a, LayerMode::kHalf)) {
      fixed.emplace_back(expand(e.u, i, 0), expand(e.v, i, 0));
    }
  } else if (rest.size() == 2) {
    fixed.emplace_back(rest[0], rest[1]);
  } else {
    require(ctx, rest.empty(), "odd number of vertices left to pair");
  }
  require(ctx, !has_layer(side_matching(n, i, 0, fixed), LayerMode::kHalf),
          "pairing completes a half-layer");
  return fixed;
}

Cycle cycle_any(const Matching& m, Ctx& ctx);
Cycle perfect_cycle(const Matching& m, Ctx& ctx);
Cycle avoid_cycle(const Matching& m, Vertex z, Ctx& ctx);

// Cycles on both sides of direction i, joined along the crossing edges of n.
// Side 0 avoids the vertex 0; side 1 avoids avoid1 when set.
Cycle split_recurse(const Matching& n, int i, const std::vector<Edge>& p0,
                    std::optional<Vertex> avoid1, std::optional<Vertex> avoid0, Ctx& ctx) {
  const Cycle c0 = lift(avoid_cycle(side_matching(n, i, 0, p0), 0, ctx), i, 0);
  if (avoid0) require(ctx, !visits(c0, *avoid0), "side-0 cycle visits the uncovered vertex u");
  const Shortcuts sc = shortcuts(c0, p0, n, i, ctx);
  const Matching sub1 = side_matching(n, i, 1, sc.edges);
  const Cycle c1 = lift(avoid1 ? avoid_cycle(sub1, compress(*avoid1, i), ctx) : cycle_any(sub1, ctx),
                        i, 1);
  return stitch(c1, sc, n, ctx);
}

Cycle perfect_cycle(const Matching& m, Ctx& ctx) {
  const int d = m.dim();
  require(ctx, m.is_perfect(), "matching is not perfect");
  if (d <= 3) {
    open_level(ctx, "oracle", d);
    return run_oracle(m, ctx, "perfect matching");
  }
  const std::size_t at = open_level(ctx, "perfect", d);
  int best = 1;
  for (int i = 2; i <= d; ++i) {
    if (cut_size(m, i) > cut_size(m, best)) best = i;
  }
  const int i = best;
  const auto a0 = crossing_ends(m, i, 0);
  require(ctx, a0.size() >= 2 && a0.size() % 2 == 0, "perfect matching with odd cut");
  ctx.trace.levels[at].direction = i;
  ctx.trace.levels[at].cut = static_cast<int>(a0.size());
  std::vector<Edge> p0;
  for (std::size_t k = 0; k + 1 < a0.size(); k += 2) p0.emplace_back(a0[k], a0[k + 1]);
  const Cycle c0 = lift(perfect_cycle(side_matching(m, i, 0, p0), ctx), i, 0);
  const Shortcuts sc = shortcuts(c0, p0, m, i, ctx);
  const Cycle c1 = lift(perfect_cycle(side_matching(m, i, 1, sc.edges), ctx), i, 1);
  return stitch(c1, sc, m, ctx);
}

Cycle cycle_any(const Matching& m, Ctx& ctx) {
  const int d = m.dim();
  if (d <= 4) {
    open_level(ctx, "oracle", d);
    return run_oracle(m, ctx, "cycle");
  }
  if (m.is_perfect()) return perfect_cycle(m, ctx);
  const std::size_t at = open_level(ctx, "cycle", d);
  const LayerIndex idx(m);
  int i = 0;
  for (int k = 1; k <= d && i == 0; ++k) {
    for (int p = 0; p <= 1; ++p) {
      if (idx.deficit(LayerId{k, p, std::nullopt}) == 0) {
        i = k;
        break;
      }
    }
  }
  if (i == 0) {
    const Vertex u = m.vertices_with(kUncovered).front();
    ctx.trace.levels[at].u = u;
    return avoid_cycle(m, u, ctx);
  }
  ctx.trace.levels[at].direction = i;
  std::vector<Vertex> side[2];
  for (Vertex x : m.vertices_with(kUncovered)) side[has_direction(x, i) ? 1 : 0].push_back(x);
  for (const auto& cands : side) {
    if (cands.size() < 2) continue;
    for (Vertex u : cands) {
      if (check_property_h(m, u).satisfied) {
        ctx.trace.levels[at].u = u;
        return avoid_cycle(m, u, ctx);
      }
    }
  }
  require(ctx, side[0].size() == 1 && side[1].size() == 1,
          "no uncovered vertex satisfies property (H)");
  const Vertex u = side[0][0];
  const Vertex ui = u ^ direction_bit(i);
  ctx.trace.levels[at].u = u;
  Matching n = m;
  if (side[1][0] == ui) {
    n.add_edge(u, ui);
    return perfect_cycle(n, ctx);
  }
  const Vertex a = m.partner(ui);
  n.remove_edge(ui);
  n.add_edge(u, a);
  Cycle c = avoid_cycle(n, ui, ctx);
  insert_between(c, u, a, {ui}, ctx);
  return c;
}

// Direction and the rule that picked it, for a matching avoiding 0.
std::pair<int, int> choose_direction(const Matching& m, const LayerIndex& idx) {
  const int d = m.dim();
  for (int k = 1; k <= d; ++k) {
    for (int j = 1; j <= d; ++j) {
      if (j == k) continue;
      for (int b = 0; b <= 1; ++b) {
        for (int p = 0; p <= 1; ++p) {
          const LayerId id{k, p, LayerSide{j, b}};
          if (!is_dangerous_for(id, 0)) continue;
          const int def = idx.deficit(id);
          if (def == 0) return {k, 1};
          if (def == 1) {
            const Edge e = missing_edges(m, id).front();
            if (m.covered(e.u) && m.covered(e.v)) return {k, 1};
          }
        }
      }
    }
  }
  for (int k = 1; k <= d; ++k) {
    for (int j = 1; j <= d; ++j) {
      if (j == k) continue;
      for (int b = 0; b <= 1; ++b) {
        for (int p = 0; p <= 1; ++p) {
          if (idx.deficit(LayerId{k, p, LayerSide{j, b}}) == 0) return {k, 2};
        }
      }
    }
  }
  int best = 1;
  for (int k = 2; k <= d; ++k) {
    if (cut_size(m, k) > cut_size(m, best)) best = k;
  }
  return {best, 3};
}

// Half-layer of Q^i_b inside n, or one missing a single edge whose ends n covers.
bool covered_near_on_side(const Matching& n, int i, int b) {
  const Matching sub = side_matching(n, i, b, {});
  const LayerIndex idx(sub);
  for (int k = 1; k < n.dim(); ++k) {
    for (int p = 0; p <= 1; ++p) {
      const LayerId id{k, p, std::nullopt};
      const int def = idx.deficit(id);
      if (def == 0) return true;
      if (def == 1) {
        const Edge e = missing_edges(sub, id).front();
        if (n.covered(expand(e.u, i, b)) && n.covered(expand(e.v, i, b))) return true;
      }
    }
  }
  return false;
}

struct Surgery {
  Matching n;
  Vertex v = 0;
  Vertex w = 0;
  bool u_covered = false;
  bool ui_covered = false;
};

Surgery surgery(const Matching& m, Vertex u, int i) {
  Surgery s{m};
  const Vertex ui = u ^ direction_bit(i);
  s.u_covered = m.covered(u);
  s.ui_covered = m.covered(ui);
  s.v = s.u_covered ? m.partner(u) : u;
  s.w = s.ui_covered ? m.partner(ui) : ui;
  if (s.u_covered) s.n.remove_edge(u);
  if (s.ui_covered) s.n.remove_edge(ui);
  s.n.add_edge(s.v, s.w);
  return s;
}

std::string surgery_cell(const Matching& m, Vertex u, int i) {
  auto where = [&](Vertex x) -> std::string {
    if (!m.covered(x)) return "free";
    return has_direction(m.partner(x), i) ? "1" : "0";
  };
  return "u:" + where(u) + ",ui:" + where(u ^ direction_bit(i));
}

// Case b choice of u among the odd covered side-0 vertices not matched across.
std::optional<Vertex> choose_u_case_b(const Matching& m, const LayerIndex& idx, int i) {
  const int d = m.dim();
  const Vertex bit = direction_bit(i);
  auto in_y = [&](Vertex x) {
    return !has_direction(x, i) && parity(x) == 1 && m.covered(x) && m.partner(x) != (x ^ bit);
  };
  for (int target = 0; target <= 1; ++target) {
    for (int j = 1; j <= d; ++j) {
      if (j == i) continue;
      for (int p = 0; p <= 1; ++p) {
        const LayerId id{j, p, LayerSide{i, 1}};
        if (idx.deficit(id) != target) continue;
        std::optional<Vertex> best;
        for (const Edge& e : layer_edges(d, id)) {
          if (!m.has_edge(e.u, e.v)) continue;
          const Vertex even = parity(e.u) == 0 ? e.u : e.v;
          const Vertex x = even ^ bit;
          if (in_y(x) && (!best || x < *best)) best = x;
        }
        if (best) return best;
      }
    }
  }
  std::optional<Vertex> best;
  for (int j = 1; j <= d; ++j) {
    if (j == i) continue;
    for (int p = 0; p <= 1; ++p) {
      const LayerId id{j, p, LayerSide{i, 0}};
      if (idx.deficit(id) != 2) continue;
      for (const Edge& e : layer_edges(d, id)) {
        if (!m.has_edge(e.u, e.v)) continue;
        const Vertex odd = parity(e.u) == 1 ? e.u : e.v;
        if (in_y(odd) && (!best || odd < *best)) best = odd;
      }
    }
  }
  if (best) return best;
  for (Vertex x = 0; x < m.size(); ++x) {
    if (in_y(x)) return x;
  }
  return std::nullopt;
}

// Directions j in which the side of u^i within Q^i_1 is covered except for
// u^i, and the half-layer L_j of Q^i_1 avoiding u^i is in n or has both ends
// of each missing edge matched across. Also returns the missing edges of L_j.
std::vector<std::pair<int, std::vector<Edge>>> blocked_directions(const Matching& n, Vertex vi,
                                                                  int i) {
  const int d = n.dim();
  std::vector<std::pair<int, std::vector<Edge>>> out;
  for (int j = 1; j <= d; ++j) {
    if (j == i) continue;
    const bool b = has_direction(vi, j);
    bool ok = true;
    for (Vertex y = 0; y < n.size() && ok; ++y) {
      if (!has_direction(y, i) || has_direction(y, j) != b || y == vi) continue;
      ok = n.covered(y);
    }
    if (!ok) continue;
    const int p = 1 - parity(vi & ~direction_bit(j));
    std::vector<Edge> missing;
    for (Vertex y = 0; y < n.size() && ok; ++y) {
      if (!has_direction(y, i) || has_direction(y, j) || parity(y) != p) continue;
      const Vertex yj = y ^ direction_bit(j);
      if (n.has_edge(y, yj)) continue;
      if (crosses(n, y, i) && crosses(n, yj, i)) {
        missing.emplace_back(y, yj);
      } else {
        ok = false;
      }
    }
    if (ok) out.emplace_back(j, std::move(missing));
  }
  return out;
}

// Previous direction before j in the cyclic order of [d] minus {i}.
int cyclic_predecessor(int j, int i, int d) {
  int p = j;
  do {
    p = p == 1 ? d : p - 1;
  } while (p == i);
  return p;
}

// Avoiding induction for d >= 6 with the avoided vertex at 0.
Cycle avoid_induction(const Matching& m0, Ctx& ctx) {
  const int d = m0.dim();
  const Matching m = make_h_maximal(m0, 0);
  const std::size_t at = open_level(ctx, "avoid", d);
  auto level = [&]() -> TraceLevel& { return ctx.trace.levels[at]; };
  const LayerIndex idx(m);
  const auto [i, rule] = choose_direction(m, idx);
  const int cut = cut_size(m, i);
  level().direction = i;
  level().rule = rule;
  level().cut = cut;

  require(ctx, !covered_near_on_side(m, i, 0), "lower side holds a (covered near) half-layer");
  if (rule == 3) {
    for (int j = 1; j <= d; ++j) {
      if (j == i) continue;
      for (int p = 0; p <= 1; ++p) {
        require(ctx, idx.deficit(LayerId{j, p, LayerSide{i, 1}}) != 0,
                "upper side holds a half-layer under the cut rule");
      }
    }
  }
  require(ctx, cut >= (rule == 3 ? 4 : 7), "cut below its guaranteed size");

  if (cut % 2 == 0) {
    level().parity_case = 1;
    const auto a0 = crossing_ends(m, i, 0);
    const auto p0 = complete_pairing(m, i, {}, a0, ctx);
    return split_recurse(m, i, p0, std::nullopt, std::nullopt, ctx);
  }

  level().parity_case = 2;
  const Vertex bit = direction_bit(i);
  std::vector<Vertex> x01;
  std::vector<Vertex> x00;
  for (Vertex x = 1; x < m.size(); ++x) {
    if (has_direction(x, i) || m.covered(x)) continue;
    require(ctx, m.covered(x ^ bit), "uncovered pair u u^i in an H-maximal matching");
    (has_direction(m.partner(x ^ bit), i) ? x01 : x00).push_back(x);
  }
  std::optional<Vertex> u;
  if (!x01.empty()) {
    u = x01.front();
    level().u_case = "ai";
  } else if (!x00.empty()) {
    level().u_case = "aii";
    for (Vertex x : x00) {
      if (!covered_near_on_side(surgery(m, x, i).n, i, 0)) {
        u = x;
        break;
      }
    }
    require(ctx, u.has_value(), "every candidate u completes a lower half-layer");
  } else {
    level().u_case = "b";
    u = choose_u_case_b(m, idx, i);
    require(ctx, u.has_value(), "no odd lower vertex left for u");
  }
  level().u = *u;
  level().surgery = surgery_cell(m, *u, i);

  const Surgery s = surgery(m, *u, i);
  const Matching& n = s.n;
  const Vertex ui = *u ^ bit;
  const int ncut = cut_size(n, i);
  level().surgery_cut = ncut;
  require(ctx, ncut % 2 == 0 && ncut >= 4, "cut after surgery is odd or below 4");
  require(ctx, !covered_near_on_side(n, i, 0), "surgery leaves a lower (covered near) half-layer");
  if (s.ui_covered) {
    require(ctx,
            check_property_h(side_matching(n, i, 1, {}), compress(ui, i)).satisfied,
            "upper side fails property (H) for u^i");
  }

  const auto b0 = crossing_ends(n, i, 0);
  std::vector<Edge> p0;
  if (!s.ui_covered) {
    level().p0_case = "a";
    p0 = complete_pairing(n, i, {}, b0, ctx);
  } else {
    const auto blocked = blocked_directions(n, ui, i);
    level().dangerous_directions = static_cast<int>(blocked.size());
    std::vector<Edge> fixed;
    if (blocked.empty()) {
      level().p0_case = "bi";
    } else if (blocked.size() == 1) {
      const auto& missing = blocked.front().second;
      if (ncut >= 6) {
        level().p0_case = "bii'";
        if (!missing.empty()) {
          const Edge& e = missing.front();
          fixed.emplace_back(n.partner(e.u), n.partner(e.v));
        }
      } else {
        level().p0_case = "bii''";
        require(ctx, missing.size() <= 2, "more than two missing layer edges");
        for (const Edge& e : missing) fixed.emplace_back(n.partner(e.u), n.partner(e.v));
      }
    } else {
      level().p0_case = "biii";
      for (const auto& entry : blocked) {
        const int j = entry.first;
        const Vertex x = ui ^ direction_bit(cyclic_predecessor(j, i, d));
        const Vertex xj = x ^ direction_bit(j);
        require(ctx, !n.has_edge(x, xj) && crosses(n, x, i) && crosses(n, xj, i),
                "blocking edge is not matched across at both ends");
        fixed.emplace_back(n.partner(x), n.partner(xj));
      }
    }
    std::unordered_set<Vertex> used;
    for (const Edge& e : fixed) {
      require(ctx, used.insert(e.u).second && used.insert(e.v).second,
              "blocking edges share a vertex");
    }
    std::vector<Vertex> rest;
    for (Vertex x : b0) {
      if (!used.count(x)) rest.push_back(x);
    }
    p0 = complete_pairing(n, i, fixed, rest, ctx);
  }

  Cycle c = split_recurse(n, i, p0, s.ui_covered ? std::optional<Vertex>(ui) : std::nullopt,
                          s.u_covered ? std::optional<Vertex>(*u) : std::nullopt, ctx);
  std::vector<Vertex> inner;
  if (s.v != *u) inner.push_back(*u);
  if (s.w != ui) inner.push_back(ui);
  insert_between(c, s.v, s.w, inner, ctx);
  return c;
}

Cycle avoid_cycle(const Matching& m, Vertex z, Ctx& ctx) {
  const int d = m.dim();
  require(ctx, d >= 5, "avoiding construction needs d >= 5");
  require(ctx, !m.covered(z), "avoided vertex is covered");
  require(ctx, check_property_h(m, z).satisfied, "property (H) fails in a recursive call");
  if (d == 5) {
    const std::size_t at = open_level(ctx, "avoid-base", d);
    ctx.trace.levels[at].u = z;
    Matching w = m;
    w.set_label(z, kForbidden);
    return run_oracle(w, ctx, "avoiding cycle");
  }
  const Normalized nm = normalize_forbidden(m, z);
  Cycle c = avoid_induction(nm.matching, ctx);
  for (Vertex& v : c) v = nm.from_normal(v);
  return c;
}

void require_plain(const Matching& m) {
  for (Vertex u = 0; u < m.size(); ++u) {
    if (m.slot(u) < 0 && m.slot(u) != kUncovered) {
      throw std::invalid_argument("matching may not carry labels here");
    }
  }
}

template <typename F>
auto guarded(CaseTrace& trace, F&& body) {
  try {
    return body();
  } catch (const ConstructionError&) {
    throw;
  } catch (const BudgetError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConstructionError(e.what(), trace);
  }
}

CycleCertificate certify(Cycle c, const Matching& m, std::vector<Vertex> avoided,
                         const CaseTrace& trace) {
  CycleCertificate cert{std::move(c), m, std::move(avoided)};
  if (const auto v = certificate_check(cert)) {
    throw ConstructionError(std::string("certificate rejected: ") + clause_name(v->clause) + " " +
                                v->detail,
                            trace);
  }
  return cert;
}

CycleCertificate run_cycle(const Matching& m, CaseTrace* trace, const ExtendOptions& opts,
                           bool perfect) {
  check_dimension(m.dim());
  if (m.dim() < 2) throw std::invalid_argument("a cycle needs d >= 2");
  require_plain(m);
  if (perfect && !m.is_perfect()) throw std::invalid_argument("matching is not perfect");
  CaseTrace local;
  CaseTrace& t = trace ? *trace : local;
  Ctx ctx{opts, t};
  Cycle c = guarded(t, [&] { return perfect ? perfect_cycle(m, ctx) : cycle_any(m, ctx); });
  return certify(std::move(c), m, {}, t);
}

}  // namespace

CycleCertificate fink_extend_perfect(const Matching& m, CaseTrace* trace, const ExtendOptions& opts) {
  return run_cycle(m, trace, opts, true);
}

CycleCertificate extend_to_cycle(const Matching& m, CaseTrace* trace, const ExtendOptions& opts) {
  return run_cycle(m, trace, opts, false);
}

AvoidResult extend_avoiding(const Matching& m, Vertex z, const ExtendOptions& opts) {
  check_dimension(m.dim());
  if (m.dim() < 5) throw std::invalid_argument("avoiding construction needs d >= 5");
  if (z >= m.size()) throw std::invalid_argument("avoided vertex out of range");
  require_plain(m);
  if (m.covered(z)) throw std::invalid_argument("avoided vertex is covered");
  AvoidResult out;
  const HReport h = check_property_h(m, z);
  if (!h.satisfied) {
    out.violation = h.witnesses.front();
    return out;
  }
  Ctx ctx{opts, out.trace};
  Cycle c = guarded(out.trace, [&] { return avoid_cycle(m, z, ctx); });
  out.certificate = certify(std::move(c), m, {z}, out.trace);
  return out;
}

namespace {

CycleCertificate long_cycle(const Matching& m, CaseTrace* trace, const ExtendOptions& opts,
                            std::size_t bound) {
  // Only cube edges are added, so the cycle also extends m.
  const Matching full = extend_to_maximal(m, {}, EdgeMode::kCube);
  CycleCertificate c = extend_to_cycle(full, trace, opts);
  CaseTrace empty;
  if (c.length() < bound || c.length() < full.covered_count()) {
    throw ConstructionError("cycle shorter than the guaranteed length", trace ? *trace : empty);
  }
  c.matching = m;
  return certify(std::move(c.vertices), m, {}, trace ? *trace : empty);
}

}  // namespace

CycleCertificate long_cycle_qd(const Matching& m, CaseTrace* trace, const ExtendOptions& opts) {
  require_plain(m);
  if (!m.all_cube_edges()) throw std::invalid_argument("matching has non-cube edges");
  const std::size_t n = std::size_t{1} << (m.dim() + 1);
  return long_cycle(m, trace, opts, (n + 2) / 3);
}

CycleCertificate long_cycle_kqd(const Matching& m, CaseTrace* trace, const ExtendOptions& opts) {
  require_plain(m);
  return long_cycle(m, trace, opts, std::size_t{1} << (m.dim() - 1));
}

namespace {

void check_lace_ends(const Matching& m, Vertex x, Vertex y) {
  check_dimension(m.dim());
  if (m.dim() < 5) throw std::invalid_argument("laceability construction needs d >= 5");
  if (x >= m.size() || y >= m.size() || x == y) throw std::invalid_argument("bad end vertices");
  if (parity(x) == parity(y)) throw std::invalid_argument("end vertices have the same parity");
  require_plain(m);
}

}  // namespace

HamlaceResult hamlace_cycle(const Matching& m, Vertex x, Vertex y, const ExtendOptions& opts) {
  check_lace_ends(m, x, y);
  if (m.covered(x) || m.covered(y) || m.covered_count() + 2 != m.size()) {
    throw std::invalid_argument("matching must cover exactly the vertices other than x and y");
  }
  HamlaceResult out;
  const LayerIndex idx(m);
  for (int i = 1; i <= m.dim() && !out.half_layer; ++i) {
    for (int p = 0; p <= 1; ++p) {
      const LayerId id{i, p, std::nullopt};
      if (idx.deficit(id) == 0) {
        out.half_layer = id;
        break;
      }
    }
  }
  if (out.half_layer) return out;
  AvoidResult r = extend_avoiding(m, x, opts);
  out.trace = std::move(r.trace);
  if (!r.certificate) {
    throw ConstructionError("property (H) fails without a half-layer", out.trace);
  }
  out.cycle = certify(std::move(r.certificate->vertices), m, {x, y}, out.trace);
  return out;
}

HamlaceResult hamlace_path(const Matching& m, Vertex x, Vertex y, const ExtendOptions& opts) {
  check_lace_ends(m, x, y);
  if (!m.is_perfect()) throw std::invalid_argument("matching is not perfect");
  const Vertex a = m.partner(x);
  const Vertex b = m.partner(y);
  if (a == y) throw std::invalid_argument("x and y are matched to each other");
  Matching star = m;
  star.remove_edge(x);
  star.remove_edge(y);
  star.add_edge(a, b);
  HamlaceResult out = hamlace_cycle(star, x, y, opts);
  if (!out.cycle) return out;
  const Cycle& c = out.cycle->vertices;
  const std::size_t k = c.size();
  std::size_t p = 0;
  while (p < k && Edge(c[p], c[(p + 1) % k]) != Edge(a, b)) ++p;
  if (p == k) throw ConstructionError("cycle misses the joined edge", out.trace);
  // Walk from c[p+1] all the way round to c[p].
  std::vector<Vertex> inner;
  for (std::size_t s = 1; s <= k; ++s) inner.push_back(c[(p + s) % k]);
  if (inner.front() != a) std::reverse(inner.begin(), inner.end());
  std::vector<Vertex> path{x};
  path.insert(path.end(), inner.begin(), inner.end());
  path.push_back(y);
  LinearForestCertificate cert{{std::move(path)}, {x, y}, m, {}};
  if (const auto v = certificate_check(cert)) {
    throw ConstructionError(std::string("path certificate rejected: ") + clause_name(v->clause),
                            out.trace);
  }
  out.path = std::move(cert);
  return out;
}

}  // namespace cubeham
