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

#include "cubeham/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cubeham/constructors.hpp"
#include "cubeham/generate.hpp"
#include "cubeham/instances.hpp"
#include "cubeham/oracle.hpp"

namespace cubeham {

namespace {

constexpr std::size_t kKeptFailures = 20;

enum class Status { kPass, kFail, kBudget };

struct Outcome {
  Status status = Status::kPass;
  std::string message;
  std::optional<Matching> input;
  std::optional<CaseTrace> trace;
  std::set<std::string> tags;
  Json note;  // per-instance data the suite aggregates afterwards
  double seconds = 0;

  void fail(const std::string& why) {
    if (status == Status::kPass) {
      status = Status::kFail;
      message = why;
    }
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

using Body = std::function<void(std::size_t, Outcome&)>;

std::uint64_t name_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

class Runner {
 public:
  Runner(HarnessReport& report, const SuiteConfig& cfg) : report_(report), cfg_(cfg) {}

  const SuiteConfig& cfg() const { return cfg_; }
  HarnessReport& report() { return report_; }

  std::size_t count(std::size_t n) const {
    const auto scaled = std::llround(static_cast<double>(n) * cfg_.scale);
    return static_cast<std::size_t>(std::max<long long>(1, scaled));
  }

  std::uint64_t seed(std::string_view stream, std::size_t k) const {
    return derive_seed(derive_seed(cfg_.seed, name_hash(stream)), k);
  }

  SearchConfig oracle() const {
    SearchConfig c;
    c.node_budget = cfg_.budget;
    return c;
  }

  ExtendOptions extend_options() const {
    ExtendOptions o;
    o.oracle = oracle();
    return o;
  }

  // Runs `body` for every index and merges outcomes in index order.
  std::vector<Outcome> batch(const std::string& check, std::size_t n, const Body& body) {
    std::vector<Outcome> out(n);
    for_each_index(n, cfg_.exec, [&](std::size_t k) {
      Outcome& o = out[k];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        body(k, o);
      } catch (const BudgetError& e) {
        o.status = Status::kBudget;
        o.message = e.what();
      } catch (const ConstructionError& e) {
        o.fail(std::string("construction failed: ") + e.what());
        o.trace = e.trace();
      } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
      }
      o.seconds = seconds_since(t0);
    });
    CheckCounts& c = report_.checks[check];
    for (std::size_t k = 0; k < n; ++k) {
      const Outcome& o = out[k];
      ++c.total;
      ++report_.total;
      for (const auto& tag : o.tags) ++report_.coverage[tag];
      switch (o.status) {
        case Status::kPass:
          ++c.passed;
          ++report_.passed;
          break;
        case Status::kBudget:
          ++c.budget;
          ++report_.budget_exhausted;
          break;
        case Status::kFail:
          ++c.failed;
          ++report_.failed;
          if (report_.failures.size() < kKeptFailures) {
            HarnessFailure f{check, k, o.message, Json(), Json()};
            if (o.input) f.matching = matching_to_json(*o.input);
            if (o.trace) f.trace = trace_to_json(*o.trace);
            report_.failures.push_back(std::move(f));
          }
          break;
      }
    }
    return out;
  }

  // A single named yes/no fact.
  void fact(const std::string& check, bool ok, const std::string& why) {
    batch(check, 1, [&](std::size_t, Outcome& o) { o.expect(ok, why); });
  }

 private:
  HarnessReport& report_;
  const SuiteConfig& cfg_;
};

Matching labelled(const Matching& m, std::initializer_list<Vertex> vs, Slot label) {
  Matching out = m;
  for (Vertex v : vs) out.set_label(v, label);
  return out;
}

// Runs the oracle and returns its outcome; budget exhaustion is raised.
SearchResult oracle_run(const Matching& m, const SearchConfig& cfg) {
  SearchResult r = extends(m, cfg);
  if (r.outcome == SearchOutcome::kBudget) throw BudgetError("oracle node budget exhausted");
  return r;
}

std::string check_cycle(const CycleCertificate& c) {
  const auto v = certificate_check(c);
  return v ? std::string(clause_name(v->clause)) + " at " + std::to_string(v->index) : "";
}

std::string check_paths(const LinearForestCertificate& c) {
  const auto v = certificate_check(c);
  return v ? std::string(clause_name(v->clause)) + " at " + std::to_string(v->index) : "";
}

std::vector<Matching> translation_classes(int d, Exec exec) {
  std::vector<Matching> out;
  const DirectionGroup group(d, {}, true);
  for_each_matching_class(Matching(d), group, [&](const Matching& m) { out.push_back(m); }, exec);
  return out;
}

int max_cut(const Matching& m) {
  int best = 0;
  for (int i = 1; i <= m.dim(); ++i) best = std::max(best, cut_size(m, i));
  return best;
}

// ---------------------------------------------------------------- suites

void suite_exhaustive(Runner& run) {
  const auto opts = run.extend_options();
  for (int d = 2; d <= 4; ++d) {
    const auto classes = translation_classes(d, run.cfg().exec);
    run.report().details["classes"][std::to_string(d)] = classes.size();
    run.batch("d" + std::to_string(d), classes.size(), [&](std::size_t k, Outcome& o) {
      const Matching& m = classes[k];
      o.input = m;
      const SearchResult r = oracle_run(m, run.oracle());
      o.expect(r.outcome == SearchOutcome::kYes, "oracle finds no extending cycle");
      CaseTrace trace;
      const CycleCertificate c = extend_to_cycle(m, &trace, opts);
      o.trace = trace;
      const std::string bad = check_cycle(c);
      o.expect(bad.empty(), "certificate rejected: " + bad);
    });
  }
}

void suite_necessity(Runner& run) {
  for (int d : {4, 5}) {
    const std::string check = "d" + std::to_string(d);
    run.batch(check, run.count(10'000), [&](std::size_t k, Outcome& o) {
      const Instance inst = gen_instance(InstanceKind::kHViolating, d, run.seed(check, k));
      const Matching& m = inst.matching;
      const Vertex z = *inst.avoid;
      o.input = m;
      o.expect(!check_property_h(m, z).satisfied, "instance satisfies (H)");
      const SearchResult r = oracle_run(labelled(m, {z}, kForbidden), run.oracle());
      o.expect(r.outcome == SearchOutcome::kNo, "oracle found a z-avoiding cycle");
      if (d >= 5) {
        const AvoidResult a = extend_avoiding(m, z, run.extend_options());
        o.expect(a.violation.has_value() && !a.certificate, "constructor did not report (H) failing");
      }
    });
  }
}

// The constructive d >= 6 corpus: every kind whose instances avoid z under (H).
constexpr InstanceKind kAvoidingKinds[] = {InstanceKind::kHSatisfying, InstanceKind::kCrossingHeavy,
                                           InstanceKind::kBalancedCut};

Json surgery_histogram(const std::vector<Outcome>& outs) {
  std::map<std::string, std::size_t> cuts;
  for (const auto& o : outs) {
    if (!o.note.is_array()) continue;
    for (const auto& c : o.note) ++cuts[std::to_string(c.get<int>())];
  }
  Json h = Json::object();
  for (const auto& [k, v] : cuts) h[k] = v;
  return h;
}

void record_case2(const CaseTrace& t, Outcome& o) {
  o.note = Json::array();
  for (const auto& lv : t.levels) {
    if (lv.step == "avoid" && lv.parity_case == 2 && lv.rule == 3 && lv.cut == 5) {
      o.note.push_back(lv.surgery_cut);
    }
  }
}

void construct_batch(Runner& run, const std::string& check, int d, std::size_t n,
                     std::vector<Outcome>* keep = nullptr) {
  const auto opts = run.extend_options();
  auto outs = run.batch(check, n, [&](std::size_t k, Outcome& o) {
    const InstanceKind kind = kAvoidingKinds[k % std::size(kAvoidingKinds)];
    const Instance inst = gen_instance(kind, d, run.seed(check, k));
    const Vertex z = *inst.avoid;
    o.input = inst.matching;
    const AvoidResult a = extend_avoiding(inst.matching, z, opts);
    o.trace = a.trace;
    o.tags = a.trace.tags();
    record_case2(a.trace, o);
    if (!a.certificate) {
      o.fail("constructor reported (H) failing");
      return;
    }
    const CycleCertificate& c = *a.certificate;
    const std::string bad = check_cycle(c);
    o.expect(bad.empty(), "certificate rejected: " + bad);
    o.expect(std::find(c.avoided.begin(), c.avoided.end(), z) != c.avoided.end(),
             "certificate does not declare z avoided");
  });
  run.report().details["rule3_cut5_surgery_cuts"][check] = surgery_histogram(outs);
  if (keep) *keep = std::move(outs);
}

void suite_sampled(Runner& run) {
  run.batch("d5_oracle", run.count(10'000), [&](std::size_t k, Outcome& o) {
    const Instance inst = gen_instance(InstanceKind::kHSatisfying, 5, run.seed("d5_oracle", k));
    const Vertex z = *inst.avoid;
    o.input = inst.matching;
    o.expect(check_property_h(inst.matching, z).satisfied, "instance violates (H)");
    const SearchResult r = oracle_run(labelled(inst.matching, {z}, kForbidden), run.oracle());
    if (r.outcome != SearchOutcome::kYes) {
      o.fail("oracle finds no z-avoiding cycle");
      return;
    }
    const std::string bad = check_cycle(CycleCertificate{r.cycle, inst.matching, {z}});
    o.expect(bad.empty(), "oracle certificate rejected: " + bad);
  });

  construct_batch(run, "d6_construct", 6, run.count(10'000));

  // Constructive success must agree with the oracle.
  const std::size_t cross = run.count(100);
  run.batch("d6_oracle_agreement", cross, [&](std::size_t k, Outcome& o) {
    const InstanceKind kind = kAvoidingKinds[k % std::size(kAvoidingKinds)];
    const Instance inst = gen_instance(kind, 6, run.seed("d6_construct", k));
    const Vertex z = *inst.avoid;
    o.input = inst.matching;
    const SearchResult r = oracle_run(labelled(inst.matching, {z}, kForbidden), run.oracle());
    o.expect(r.outcome == SearchOutcome::kYes, "oracle disagrees with the constructor");
  });

  construct_batch(run, "d7_construct", 7, run.count(1'000));
}

void suite_hunt(Runner& run) {
  struct Found {};
  const DirectionGroup group(4, {}, false);
  const Matching seed = labelled(Matching(4), {0}, kForbidden);
  std::size_t classes = 0;
  std::size_t budget = 0;
  CheckCounts& c = run.report().checks["hunt"];
  std::optional<Matching> witness;
  try {
    for_each_matching_class(
        seed, group,
        [&](const Matching& m) {
          ++classes;
          if (!check_property_h(m, 0).satisfied) return;
          ++c.total;
          const SearchResult r = extends(m, run.oracle());
          if (r.outcome == SearchOutcome::kBudget) {
            ++c.budget;
            ++budget;
          } else if (r.outcome == SearchOutcome::kNo) {
            witness = m;
            throw Found{};
          } else {
            ++c.passed;
          }
        },
        run.cfg().exec);
  } catch (const Found&) {
  }
  run.report().total += c.total;
  run.report().passed += c.passed;
  run.report().budget_exhausted += budget;
  run.report().details["classes_scanned"] = classes;
  if (!witness) {
    run.fact("witness_found", false, "no (H)-satisfying matching without a z-avoiding cycle");
    return;
  }
  Matching plain = *witness;
  plain.set_label(0, kUncovered);
  run.report().details["witness"] = matching_to_json(plain);
  // Confirm with the other vertex-selection heuristic.
  SearchConfig alt = run.oracle();
  alt.selection = VertexSelection::kFirst;
  run.batch("witness_confirmed", 1, [&](std::size_t, Outcome& o) {
    o.input = plain;
    o.expect(check_property_h(plain, 0).satisfied, "witness violates (H)");
    o.expect(oracle_run(*witness, alt).outcome == SearchOutcome::kNo,
             "second search finds a z-avoiding cycle");
  });
}

void suite_length_bounds(Runner& run) {
  const SearchConfig cfg = run.oracle();
  {
    const Matching m = Matching::from_edges(2, std::vector<Edge>{{0, 3}});
    const auto r = max_cycle_length(m, cfg);
    run.report().details["kq2_long_edge_max"] = r.length ? static_cast<long>(*r.length) : -1L;
    run.fact("a_kq2_long_edge", r.exhaustive && r.length == 3u, "maximum cycle length is not 3");
  }
  {
    const Matching m = Matching::from_edges(3, std::vector<Edge>{{0, 3}, {5, 6}});
    const auto r = max_cycle_length(m, cfg);
    run.report().details["q3_even_pairs_max"] = r.length ? static_cast<long>(*r.length) : -1L;
    run.fact("b_q3_even_pairs", r.exhaustive && r.length == 6u, "maximum cycle length is not 6");
  }
  const auto opts = run.extend_options();
  for (int mode = 0; mode < 2; ++mode) {
    for (int d = 5; d <= 7; ++d) {
      const std::string check = std::string(mode == 0 ? "c_qd_d" : "d_kqd_d") + std::to_string(d);
      const std::size_t bound = mode == 0 ? (vertex_count(d + 1) + 2) / 3 : vertex_count(d - 1);
      auto outs = run.batch(check, run.count(1'000), [&](std::size_t k, Outcome& o) {
        const InstanceKind kind = mode == 0 ? InstanceKind::kUniformQd : InstanceKind::kUniformKqd;
        const Instance inst = gen_instance(kind, d, run.seed(check, k));
        o.input = inst.matching;
        CaseTrace trace;
        const CycleCertificate c = mode == 0 ? long_cycle_qd(inst.matching, &trace, opts)
                                             : long_cycle_kqd(inst.matching, &trace, opts);
        o.trace = trace;
        o.tags = trace.tags();
        const std::string bad = check_cycle(c);
        o.expect(bad.empty(), "certificate rejected: " + bad);
        o.expect(c.length() >= bound, "cycle of length " + std::to_string(c.length()) +
                                          " below " + std::to_string(bound));
        o.note = c.length();
      });
      std::size_t shortest = vertex_count(d);
      for (const auto& o : outs) {
        if (o.note.is_number()) shortest = std::min(shortest, o.note.get<std::size_t>());
      }
      run.report().details["shortest"][check] = shortest;
      run.report().details["bound"][check] = bound;
    }
  }
}

std::vector<Vertex> all_even_vertices(int d) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(d); ++v) {
    if (parity(v) == 0) out.push_back(v);
  }
  return out;
}

Matching all_even_pairs(int d) {
  Matching m(d);
  const auto even = all_even_vertices(d);
  for (std::size_t k = 0; k + 1 < even.size(); k += 2) m.add_edge(even[k], even[k + 1]);
  return m;
}

// Random matching with no (near) half-layer per mode; removes edges until clean.
Matching layer_free(int d, LayerMode mode, Rng& rng) {
  Matching m = gen_instance(InstanceKind::kUniformKqd, d, rng.next()).matching;
  while (has_layer(m, mode) || m.size() - m.covered_count() < 4) {
    const auto edges = m.edges();
    m.remove_edge(edges[rng.below(edges.size())].u);
  }
  return m;
}

void check_layer_union(Runner& run) {
  struct Item {
    int d;
    std::vector<LayerId> layers;
  };
  std::vector<Item> items;
  for (int d = 4; d <= 6; ++d) {
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      const int k = std::popcount(mask);
      if (k < 2) continue;
      for (unsigned par = 0; par < (1u << k); ++par) {
        Item it{d, {}};
        int idx = 0;
        for (int i = 1; i <= d; ++i) {
          if (mask & (1u << (i - 1))) {
            it.layers.push_back(LayerId{i, static_cast<int>((par >> idx) & 1u), std::nullopt});
            ++idx;
          }
        }
        items.push_back(std::move(it));
      }
    }
  }
  std::vector<std::size_t> avoided(items.size());
  std::vector<const Item*> claimed;
  for (std::size_t k = 0; k < items.size(); ++k) {
    avoided[k] = check_union_structure(items[k].d, items[k].layers).avoided_vertices;
    if (items[k].layers.size() <= 3) claimed.push_back(&items[k]);
  }
  // Pairs and triples carry the pass/fail check.
  run.batch("layer_union_counts", claimed.size(), [&](std::size_t k, Outcome& o) {
    const Item& it = *claimed[k];
    const auto r = check_union_structure(it.d, it.layers);
    const auto n = it.layers.size();
    o.expect(r.avoided_vertices == vertex_count(it.d - static_cast<int>(n)), "avoided count");
    if (n == 2) {
      o.expect(r.shared_vertices == vertex_count(it.d - 2), "shared count");
      o.expect(r.paths_of_length_two, "union is not a set of 2-paths");
    }
  });
  // Larger families: with k = d odd the d parity equations sum to zero, so
  // the avoided count is 0 or 2 instead of 2^(d-k).
  std::map<std::string, std::map<std::string, std::size_t>> seen;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto n = items[k].layers.size();
    if (n <= 3) continue;
    const std::string key = "d" + std::to_string(items[k].d) + "_k" + std::to_string(n);
    ++seen[key][std::to_string(avoided[k])];
  }
  Json& all = run.report().details["union_avoided_histogram_k_ge_4"];
  for (const auto& [key, hist] : seen) {
    for (const auto& [count, n] : hist) all[key][count] = n;
  }
}

void check_layer_directions(Runner& run, const std::vector<Matching>& d4) {
  run.batch("layer_directions_exhaustive_d4", d4.size(), [&](std::size_t k, Outcome& o) {
    o.input = d4[k];
    o.expect(count_layer_directions(d4[k], 0).near_half.size() <= 1,
             "(near) half-layers in two directions");
  });
  for (int d : {5, 6}) {
    const std::string check = "layer_directions_random_d" + std::to_string(d);
    run.batch(check, run.count(10'000), [&](std::size_t k, Outcome& o) {
      const InstanceKind kind = k % 2 ? InstanceKind::kHalfLayerPlanted : InstanceKind::kUniformKqd;
      const Matching m = gen_instance(kind, d, run.seed(check, k)).matching;
      o.input = m;
      const auto dirs = count_layer_directions(m, 0);
      o.expect(dirs.near_half.size() <= 1, "(near) half-layers in two directions");
      o.expect(dirs.two_near_half.size() <= 1, "2-near half-layers in two directions");
      if (d >= 6) o.expect(dirs.dangerous_quad.size() <= 1, "dangerous quad-layers in two directions");
    });
  }
}

void check_maximal_sizes(Runner& run, const std::map<int, std::vector<Matching>>& classes) {
  run.fact("maximal_size_ceil_f5", bound_f(5).ceil_f == 12, "ceil f(5) != 12");
  run.fact("maximal_size_ceil_f6", bound_f(6).ceil_f == 23, "ceil f(6) != 23");
  run.fact("cut_ceil_f5_over_5", bound_f(5).ceil_f_over_d == 3, "ceil(f(5)/5) != 3");
  run.fact("cut_ceil_f6_over_6", bound_f(6).ceil_f_over_d == 4, "ceil(f(6)/6) != 4");
  Json& minima = run.report().details["maximal_size_exhaustive_min_edges"];
  for (const auto& [d, list] : classes) {
    const auto need = static_cast<std::size_t>(bound_f(d).ceil_f);
    std::vector<const Matching*> maximal;
    std::size_t smallest = vertex_count(d);
    for (const Matching& m : list) {
      if (!m.all_cube_edges() || !m.is_maximal()) continue;
      maximal.push_back(&m);
      smallest = std::min(smallest, m.edge_count());
    }
    minima[std::to_string(d)] = smallest;
    run.batch("maximal_size_exhaustive_d" + std::to_string(d), maximal.size(), [&](std::size_t k, Outcome& o) {
      o.input = *maximal[k];
      o.expect(maximal[k]->edge_count() >= need, "maximal matching of Q_d below f(d)");
    });
  }
  for (int d = 5; d <= 8; ++d) {
    const std::string check = "maximal_size_random_d" + std::to_string(d);
    const auto need = static_cast<std::size_t>(bound_f(d).ceil_f);
    run.batch(check, run.count(1'000), [&](std::size_t k, Outcome& o) {
      const Matching start = gen_instance(InstanceKind::kUniformQd, d, run.seed(check, k)).matching;
      const Matching m = extend_to_maximal(start, {}, EdgeMode::kCube);
      o.input = m;
      o.expect(m.is_maximal() && m.all_cube_edges(), "not a maximal matching of Q_d");
      o.expect(m.edge_count() >= need, "maximal matching of Q_d below f(d)");
    });
    const std::string kcheck = "maximal_cube_size_random_d" + std::to_string(d);
    run.batch(kcheck, run.count(1'000), [&](std::size_t k, Outcome& o) {
      const Matching start = gen_instance(InstanceKind::kUniformKqd, d, run.seed(kcheck, k)).matching;
      const Matching m = extend_to_maximal(start, {}, EdgeMode::kAny);
      o.input = m;
      o.expect(m.is_maximal(), "not maximal");
      o.expect(m.edge_count() >= vertex_count(d - 2), "maximal matching of K(Q_d) below 2^(d-2)");
    });
  }
  for (int d = 2; d <= 10; ++d) {
    const Matching m = all_even_pairs(d);
    run.fact("maximal_cube_tight_d" + std::to_string(d),
             m.is_maximal() && m.edge_count() == vertex_count(d - 2),
             "all-even-pairs matching is not a maximal matching of size 2^(d-2)");
  }
}

void check_cuts(Runner& run) {
  for (int d : {5, 6}) {
    const int need = d == 5 ? 3 : 4;
    const std::string check = "maximal_cut_d" + std::to_string(d);
    run.batch(check, run.count(10'000), [&](std::size_t k, Outcome& o) {
      const std::uint64_t s = run.seed(check, k);
      const Matching start = gen_instance(InstanceKind::kUniformKqd, d, s).matching;
      const Matching m = extend_to_maximal(start, {}, s % 2 ? EdgeMode::kAny : EdgeMode::kCube);
      o.input = m;
      const int i = choose_direction_maximal_cut(m);
      o.expect(cut_size(m, i) == max_cut(m), "chosen direction does not maximize the cut");
      o.expect(cut_size(m, i) >= need, "cut below the guaranteed bound");
    });
    const std::string hcheck = "h_maximal_cut_d" + std::to_string(d);
    run.batch(hcheck, run.count(1'000), [&](std::size_t k, Outcome& o) {
      const Matching start = gen_instance(InstanceKind::kHSatisfying, d, run.seed(hcheck, k)).matching;
      o.input = start;
      const Matching m = make_h_maximal(start, 0);
      o.expect(is_h_maximal(m, 0).maximal, "completion is not H-maximal");
      o.expect(check_property_h(m, 0).satisfied, "completion violates (H)");
      o.expect(max_cut(m) >= need, "H-maximal cut below the guaranteed bound");
    });
  }
}

void check_violation(Runner& run) {
  for (int d : {5, 6}) {
    const std::string check = "h_violation_d" + std::to_string(d);
    run.batch(check, run.count(1'000), [&](std::size_t k, Outcome& o) {
      const Matching m = gen_instance(InstanceKind::kHSatisfying, d, run.seed(check, k)).matching;
      o.input = m;
      for (int i = 1; i <= d; ++i) {
        for (Vertex u = 1; u < m.size(); ++u) {
          const Vertex ui = u ^ direction_bit(i);
          if (has_direction(u, i) || m.covered(u) || m.covered(ui)) continue;
          const HViolationCase c = classify_h_violation(m, u, i);
          Matching bigger = m;
          bigger.add_edge(u, ui);
          const bool violated = !check_property_h(bigger, 0).satisfied;
          o.expect(violated == (c != HViolationCase::kNone), "classification disagrees with (H)");
          if (c == HViolationCase::kNone) continue;
          const int cut = cut_size(m, i);
          o.expect(cut % 2 == 0, "odd cut under a violation");
          o.expect(cut >= static_cast<int>(vertex_count(d - 2)), "cut below 2^(d-2)");
          o.expect(m.edge_count() + 1 >= 3 * vertex_count(d - 3), "matching below 3*2^(d-3)-1");
        }
      }
    });
  }
}

void check_quad_cut(Runner& run) {
  run.batch("q5_quad_cut", run.count(500), [&](std::size_t k, Outcome& o) {
    Rng rng(run.seed("q5_quad_cut", k));
    const int i = static_cast<int>(rng.between(1, 5));
    int j = static_cast<int>(rng.between(1, 4));
    if (j >= i) ++j;
    Matching m(5);
    auto quad = layer_edges(5, LayerId{i, 1, LayerSide{j, 0}});
    if (rng.chance(1, 2)) quad.erase(quad.begin() + static_cast<long>(rng.below(quad.size())));
    for (const Edge& e : quad) m.add_edge(e);
    std::vector<Vertex> pool;
    for (Vertex v = 1; v < m.size(); ++v) {
      if (!m.covered(v) && rng.chance(1, 2)) pool.push_back(v);
    }
    if (pool.size() % 2) pool.pop_back();
    add_random_pairing(m, pool, rng);
    o.input = m;
    const int dir = choose_direction_q5_quad(m);
    const LayerIndex index(m);
    o.expect(cut_size(m, dir) >= 3, "cut below 3");
    for (int q = 1; q <= 5; ++q) {
      if (q == dir) continue;
      for (int p = 0; p < 2; ++p) {
        o.expect(index.deficit(LayerId{q, p, LayerSide{dir, 0}}) > 1,
                 "lower side keeps a (near) half-layer");
      }
    }
  });
}

void check_completion(Runner& run) {
  for (LayerMode mode : {LayerMode::kHalf, LayerMode::kNearHalf}) {
    const std::string check = mode == LayerMode::kHalf ? "completion_half" : "completion_near_half";
    run.batch(check, run.count(10'000), [&](std::size_t k, Outcome& o) {
      Rng rng(run.seed(check, k));
      const int d = 4 + static_cast<int>(k % 3);
      const Matching m = layer_free(d, mode, rng);
      o.input = m;
      std::vector<Vertex> free;
      for (Vertex v = 0; v < m.size(); ++v) {
        if (!m.covered(v)) free.push_back(v);
      }
      rng.shuffle(std::span<Vertex>(free));
      const std::size_t room = (free.size() - 4) / 2;
      free.resize(4 + 2 * static_cast<std::size_t>(rng.below(room + 1)));
      const auto p = avoid_layer_completion(m, free, mode);
      Matching both = m;
      std::set<Vertex> hit;
      for (const Edge& e : p) {
        both.add_edge(e);
        hit.insert(e.u);
        hit.insert(e.v);
      }
      o.expect(hit == std::set<Vertex>(free.begin(), free.end()), "completion is not perfect on A");
      o.expect(!has_layer(both, mode), "completion created a forbidden layer");
    });
  }
}

void suite_lemma_bank(Runner& run) {
  std::map<int, std::vector<Matching>> classes;
  for (int d = 2; d <= 4; ++d) classes[d] = translation_classes(d, run.cfg().exec);
  check_layer_union(run);
  check_layer_directions(run, classes[4]);
  check_maximal_sizes(run, classes);
  check_cuts(run);
  check_violation(run);
  check_quad_cut(run);
  check_completion(run);
}

// Perfect matching of K(Q_d) whose reduction M - xa - yb + ab gives back `m`.
std::optional<Matching> widen(const Matching& m, Vertex x, Vertex y) {
  const auto edges = m.edges();
  if (edges.empty()) return std::nullopt;
  Matching full = m;
  const Edge e = edges.front();
  full.remove_edge(e.u);
  full.add_edge(x, e.u);
  full.add_edge(y, e.v);
  return full;
}

void suite_hamlace(Runner& run) {
  const auto opts = run.extend_options();
  for (bool planted : {false, true}) {
    const InstanceKind kind = planted ? InstanceKind::kHamlacePlanted : InstanceKind::kHamlace;
    const std::string check = planted ? "planted" : "half_layer_free";
    run.batch(check, run.count(planted ? 100 : 1'000), [&](std::size_t k, Outcome& o) {
      const Instance inst = gen_instance(kind, 5, run.seed(check, k));
      const Vertex x = *inst.x;
      const Vertex y = *inst.y;
      const Matching& m = inst.matching;
      o.input = m;
      const HamlaceResult cyc = hamlace_cycle(m, x, y, opts);
      o.trace = cyc.trace;
      const Matching full = *widen(m, x, y);
      const HamlaceResult path = hamlace_path(full, x, y, opts);
      // Middle segment a..b of an x..y Hamilton path, for the oracle.
      Matching middle = full;
      const Vertex a = full.partner(x);
      const Vertex b = full.partner(y);
      middle.remove_edge(x);
      middle.remove_edge(y);
      middle.set_label(x, kForbidden);
      middle.set_label(y, kForbidden);
      middle.set_label(a, kTerminal);
      middle.set_label(b, kTerminal);
      const SearchResult cyc_oracle = oracle_run(labelled(m, {x, y}, kForbidden), run.oracle());
      const SearchResult path_oracle = oracle_run(middle, run.oracle());
      if (planted) {
        o.expect(cyc.half_layer.has_value() && !cyc.cycle, "cycle verdict not negative");
        o.expect(path.half_layer.has_value() && !path.path, "path verdict not negative");
        o.expect(cyc_oracle.outcome == SearchOutcome::kNo, "oracle finds a cycle");
        o.expect(path_oracle.outcome == SearchOutcome::kNo, "oracle finds a path");
        return;
      }
      o.expect(cyc_oracle.outcome == SearchOutcome::kYes, "oracle finds no cycle");
      o.expect(path_oracle.outcome == SearchOutcome::kYes, "oracle finds no path");
      if (!cyc.cycle || !path.path) {
        o.fail("negative verdict on a half-layer-free instance");
        return;
      }
      const CycleCertificate& c = *cyc.cycle;
      o.expect(check_cycle(c).empty(), "cycle certificate rejected");
      o.expect(c.length() == vertex_count(5) - 2, "cycle length is not 30");
      o.expect(std::find(c.vertices.begin(), c.vertices.end(), x) == c.vertices.end() &&
                   std::find(c.vertices.begin(), c.vertices.end(), y) == c.vertices.end(),
               "cycle meets x or y");
      const LinearForestCertificate& p = *path.path;
      o.expect(check_paths(p).empty(), "path certificate rejected");
      o.expect(p.paths.size() == 1 && p.paths[0].size() == vertex_count(5), "path is not Hamilton");
      if (p.paths.size() == 1 && !p.paths[0].empty()) {
        const auto& v = p.paths[0];
        const bool ends = (v.front() == x && v.back() == y) || (v.front() == y && v.back() == x);
        o.expect(ends, "path ends are not x and y");
      }
    });
  }
}

void suite_fink(Runner& run) {
  const auto opts = run.extend_options();
  for (int d = 4; d <= 9; ++d) {
    const std::string check = "d" + std::to_string(d);
    auto outs = run.batch(check, run.count(1'000), [&](std::size_t k, Outcome& o) {
      const Instance inst = gen_instance(InstanceKind::kPerfectKqd, d, run.seed(check, k));
      o.input = inst.matching;
      CaseTrace trace;
      const CycleCertificate c = fink_extend_perfect(inst.matching, &trace, opts);
      o.trace = trace;
      o.expect(check_cycle(c).empty(), "certificate rejected");
      o.expect(c.length() == vertex_count(d), "not a Hamilton cycle");
    });
    std::vector<double> times;
    for (const auto& o : outs) times.push_back(o.seconds);
    std::sort(times.begin(), times.end());
    run.report().timing["median_seconds"][check] = times[times.size() / 2];
  }
}

void merge_coverage(HarnessReport& into, const HarnessReport& from) {
  for (const auto& [tag, n] : from.coverage) into.coverage[tag] += n;
}

void suite_case_coverage(Runner& run) {
  SuiteConfig sub = run.cfg();
  const HarnessReport sampled = run_suite("sampled_thm8_d5", sub);
  const HarnessReport lengths = run_suite("length_bounds", sub);
  HarnessReport& r = run.report();
  merge_coverage(r, sampled);
  merge_coverage(r, lengths);
  r.details["sources_green"] = sampled.green() && lengths.green();
  for (const auto& tag : case_tags()) {
    const auto it = r.coverage.find(tag);
    const bool seen = it != r.coverage.end() && it->second > 0;
    run.fact("tag " + tag, seen, "case tag " + tag + " never fired");
  }
}

using SuiteFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"exhaustive_d_le_4", suite_exhaustive},
      {"necessity_d45", suite_necessity},
      {"sampled_thm8_d5", suite_sampled},
      {"lemma_bank", suite_lemma_bank},
      {"length_bounds", suite_length_bounds},
      {"hamlace_d5", suite_hamlace},
      {"d4_counterexample_hunt", suite_hunt},
      {"fink", suite_fink},
      {"case_coverage", suite_case_coverage},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& case_tags() {
  static const std::vector<std::string> tags = {"a", "ai", "aii", "b", "bi", "bii'", "bii''", "biii"};
  return tags;
}

std::vector<std::string> missing_tags(const std::map<std::string, std::size_t>& coverage) {
  std::vector<std::string> out;
  for (const auto& tag : case_tags()) {
    const auto it = coverage.find(tag);
    if (it == coverage.end() || it->second == 0) out.push_back(tag);
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

HarnessReport run_suite(std::string_view name, const SuiteConfig& cfg) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == name; });
  if (it == reg.end()) throw std::invalid_argument("unknown suite: " + std::string(name));
  HarnessReport report;
  report.suite = std::string(name);
  report.seed = cfg.seed;
  const auto t0 = std::chrono::steady_clock::now();
  Runner run(report, cfg);
  it->second(run);
  report.wall_seconds = seconds_since(t0);
  return report;
}

Json report_to_json(const HarnessReport& r, bool with_timing) {
  Json checks = Json::object();
  for (const auto& [name, c] : r.checks) {
    checks[name] = Json{{"total", c.total}, {"passed", c.passed}, {"failed", c.failed}, {"budget", c.budget}};
  }
  Json coverage = Json::object();
  for (const auto& [tag, n] : r.coverage) coverage[tag] = n;
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back(Json{{"check", f.check},
                            {"index", f.index},
                            {"message", f.message},
                            {"matching", f.matching},
                            {"trace", f.trace}});
  }
  Json out{{"suite", r.suite},
           {"seed", r.seed},
           {"total", r.total},
           {"passed", r.passed},
           {"failed", r.failed},
           {"budget_exhausted", r.budget_exhausted},
           {"checks", std::move(checks)},
           {"coverage", std::move(coverage)},
           {"failures", std::move(failures)},
           {"details", r.details}};
  if (with_timing) {
    out["wall_seconds"] = r.wall_seconds;
    out["timing"] = r.timing;
  }
  return out;
}

std::string report_summary(const HarnessReport& r) {
  std::ostringstream out;
  out << r.suite << ": " << (r.green() ? "PASS" : "FAIL") << "  total=" << r.total
      << " passed=" << r.passed << " failed=" << r.failed << " budget=" << r.budget_exhausted
      << " seed=" << r.seed << " wall=" << r.wall_seconds << "s\n";
  for (const auto& [name, c] : r.checks) {
    if (c.failed == 0 && c.budget == 0) continue;
    out << "  " << name << ": failed=" << c.failed << " budget=" << c.budget << "\n";
  }
  for (const auto& f : r.failures) out << "  [" << f.check << " #" << f.index << "] " << f.message << "\n";
  if (!r.coverage.empty()) {
    out << "  coverage:";
    for (const auto& [tag, n] : r.coverage) out << " " << tag << "=" << n;
    out << "\n";
  }
  return out.str();
}

}  // namespace cubeham
