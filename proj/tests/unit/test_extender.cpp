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

#include <gtest/gtest.h>

#include "cubeham/constructors.hpp"
#include "cubeham/extender.hpp"
#include "cubeham/harness.hpp"
#include "cubeham/instances.hpp"
#include "cubeham/layers.hpp"
#include "cubeham/oracle.hpp"
#include "cubeham/property_h.hpp"
#include "support.hpp"

using namespace cubeham;

namespace {

bool valid_cycle(const CycleCertificate& c) {
  return !certificate_check(c).has_value() && naive::cycle_ok(c.matching, c.vertices, c.avoided);
}

bool valid_path(const Matching& m, const std::vector<Vertex>& p, Vertex x, Vertex y) {
  if (p.size() != m.size() || p.front() != x || p.back() != y) return false;
  std::vector<bool> seen(m.size(), false);
  for (Vertex v : p) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const Vertex a = p[k];
    const Vertex b = p[k + 1];
    if (!(m.partner(a) == b) && naive::popcount(a ^ b) != 1) return false;
  }
  // Every matching edge is traversed: each vertex is next to its partner.
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Vertex v = p[k];
    const bool before = k > 0 && p[k - 1] == m.partner(v);
    const bool after = k + 1 < p.size() && p[k + 1] == m.partner(v);
    if (!before && !after) return false;
  }
  return true;
}

}  // namespace

TEST(Extender, FinkOnPerfectMatchings) {
  for (int d = 2; d <= 8; ++d) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const Matching m = gen_instance(InstanceKind::kPerfectKqd, d, s).matching;
      const CycleCertificate c = fink_extend_perfect(m);
      EXPECT_EQ(c.length(), m.size());
      EXPECT_TRUE(valid_cycle(c));
    }
  }
  EXPECT_THROW(fink_extend_perfect(Matching(4)), std::invalid_argument);
}

TEST(Extender, ExtendToCycleExamples) {
  const CycleCertificate empty = extend_to_cycle(Matching(5));
  EXPECT_TRUE(valid_cycle(empty));
  Matching k2(2);
  k2.add_edge(0, 3);
  const CycleCertificate tri = extend_to_cycle(k2);
  EXPECT_EQ(tri.length(), 3u);
  EXPECT_TRUE(valid_cycle(tri));
  EXPECT_THROW(extend_to_cycle(Matching(1)), std::invalid_argument);
  Matching labelled(4);
  labelled.set_label(3, kForbidden);
  EXPECT_THROW(extend_to_cycle(labelled), std::invalid_argument);
}

TEST(Extender, ExtendToCycleOnRandomMatchings) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const int d = 5 + static_cast<int>(s % 3);
    const Matching m = gen_instance(InstanceKind::kUniformKqd, d, s).matching;
    CaseTrace trace;
    const CycleCertificate c = extend_to_cycle(m, &trace);
    EXPECT_TRUE(valid_cycle(c));
    EXPECT_FALSE(trace.levels.empty());
    if (s < 20 && d == 5) EXPECT_EQ(extends(m).outcome, SearchOutcome::kYes);
  }
}

TEST(Extender, AvoidingEmptyMatching) {
  const AvoidResult r = extend_avoiding(Matching(5), 0);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_TRUE(valid_cycle(*r.certificate));
  EXPECT_EQ(r.certificate->avoided, std::vector<Vertex>{0});
}

TEST(Extender, AvoidingReportsViolation) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Instance inst = gen_instance(InstanceKind::kHViolating, 5 + static_cast<int>(s % 2), s);
    const AvoidResult r = extend_avoiding(inst.matching, *inst.avoid);
    EXPECT_FALSE(r.certificate.has_value());
    ASSERT_TRUE(r.violation.has_value());
    // The witness direction hosts a half-layer.
    const int i = r.violation->direction;
    EXPECT_TRUE(naive::has_half_layer(inst.matching, i, 0) || naive::has_half_layer(inst.matching, i, 1));
  }
}

TEST(Extender, AvoidingOnSatisfyingMatchings) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int d = 5 + static_cast<int>(s % 3);
    const InstanceKind kind = s % 2 == 0 ? InstanceKind::kHSatisfying : InstanceKind::kBalancedCut;
    const Instance inst = gen_instance(kind, d, s);
    const AvoidResult r = extend_avoiding(inst.matching, *inst.avoid);
    ASSERT_TRUE(r.certificate.has_value()) << "seed " << s;
    EXPECT_TRUE(valid_cycle(*r.certificate));
    EXPECT_FALSE(r.violation.has_value());
  }
}

TEST(Extender, AvoidingTranslatedVertex) {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    const Instance inst = gen_instance(InstanceKind::kHSatisfying, 6, static_cast<std::uint64_t>(t));
    const Vertex z = static_cast<Vertex>(rng.below(64));
    const Matching moved = translate(inst.matching, z);
    const AvoidResult r = extend_avoiding(moved, z);
    ASSERT_TRUE(r.certificate.has_value());
    EXPECT_TRUE(valid_cycle(*r.certificate));
    EXPECT_EQ(r.certificate->avoided, std::vector<Vertex>{z});
  }
}

TEST(Extender, AvoidingPreconditions) {
  EXPECT_THROW(extend_avoiding(Matching(4), 0), std::invalid_argument);
  Matching m(5);
  m.add_edge(0, 1);
  EXPECT_THROW(extend_avoiding(m, 0), std::invalid_argument);
  EXPECT_THROW(extend_avoiding(Matching(5), 32), std::invalid_argument);
}

TEST(Extender, TraceTagsUseKnownNames) {
  std::set<std::string> known(case_tags().begin(), case_tags().end());
  known.insert("bii");
  std::set<std::string> seen;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Instance inst = gen_instance(s % 2 ? InstanceKind::kBalancedCut : InstanceKind::kCrossingHeavy, 6, s);
    const AvoidResult r = extend_avoiding(inst.matching, *inst.avoid);
    ASSERT_TRUE(r.certificate.has_value());
    for (const auto& tag : r.trace.tags()) {
      EXPECT_TRUE(known.count(tag)) << tag;
      seen.insert(tag);
    }
    for (const TraceLevel& lv : r.trace.levels) {
      EXPECT_FALSE(lv.step.empty());
      if (lv.step == "avoid") {
        EXPECT_GE(lv.direction, 1);
        EXPECT_LE(lv.direction, lv.dim);
        EXPECT_GE(lv.rule, 1);
        EXPECT_LE(lv.rule, 3);
        EXPECT_EQ(lv.parity_case, lv.cut % 2 == 0 ? 1 : 2);
      }
    }
  }
  EXPECT_FALSE(seen.empty());
}

TEST(Extender, LongCycleInQd) {
  const CycleCertificate five = long_cycle_qd(Matching(5));
  EXPECT_GE(five.length(), 24u);
  EXPECT_TRUE(valid_cycle(five));
  const CycleCertificate two = long_cycle_qd(Matching(2));
  EXPECT_GE(two.length(), 3u);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Matching m = gen_instance(InstanceKind::kUniformQd, 6, s).matching;
    const CycleCertificate c = long_cycle_qd(m);
    EXPECT_GE(c.length(), 43u);
    EXPECT_TRUE(valid_cycle(c));
    EXPECT_EQ(c.matching, m);
  }
  Matching longedge(4);
  longedge.add_edge(0, 3);
  EXPECT_THROW(long_cycle_qd(longedge), std::invalid_argument);
}

TEST(Extender, LongCycleInKqd) {
  EXPECT_GE(long_cycle_kqd(Matching(4)).length(), 8u);
  // All even vertices of Q_4 paired: the cycle alternates parity except on
  // matching edges, so at most 3/4 of the vertices fit.
  Matching even(4);
  std::vector<Vertex> ev;
  for (Vertex v = 0; v < 16; ++v) {
    if (naive::popcount(v) % 2 == 0) ev.push_back(v);
  }
  for (std::size_t k = 0; k < ev.size(); k += 2) even.add_edge(ev[k], ev[k + 1]);
  const CycleCertificate c = long_cycle_kqd(even);
  EXPECT_TRUE(valid_cycle(c));
  EXPECT_GE(c.length(), 8u);
  EXPECT_LE(c.length(), 12u);
  const LengthResult best = max_cycle_length(even);
  EXPECT_TRUE(best.exhaustive);
  EXPECT_EQ(best.length, 12u);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Matching m = gen_instance(InstanceKind::kUniformKqd, 6, s).matching;
    const CycleCertificate k = long_cycle_kqd(m);
    EXPECT_GE(k.length(), 32u);
    EXPECT_TRUE(valid_cycle(k));
    EXPECT_EQ(k.matching, m);
  }
}

TEST(Extender, HamlaceCycleAndPath) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Instance inst = gen_instance(InstanceKind::kHamlace, 5, s);
    const Vertex x = *inst.x;
    const Vertex y = *inst.y;
    const HamlaceResult r = hamlace_cycle(inst.matching, x, y);
    ASSERT_TRUE(r.cycle.has_value());
    EXPECT_EQ(r.cycle->length(), 30u);
    EXPECT_TRUE(valid_cycle(*r.cycle));
  }
}

TEST(Extender, HamlacePathFromPerfectMatching) {
  int done = 0;
  for (std::uint64_t s = 0; done < 30 && s < 500; ++s) {
    Matching m = gen_instance(InstanceKind::kPerfectKqd, 5, s).matching;
    Rng rng(s);
    const Vertex x = static_cast<Vertex>(rng.below(32));
    Vertex y = static_cast<Vertex>(rng.below(32));
    if (parity(x) == parity(y) || m.partner(x) == y) continue;
    // Skip instances where the reduced matching holds a half-layer.
    Matching star = m;
    const Vertex a = m.partner(x);
    const Vertex b = m.partner(y);
    star.remove_edge(x);
    star.remove_edge(y);
    star.add_edge(a, b);
    bool layer = false;
    for (int i = 1; i <= 5; ++i) layer = layer || naive::has_half_layer(star, i, 0) || naive::has_half_layer(star, i, 1);
    const HamlaceResult r = hamlace_path(m, x, y);
    if (layer) {
      EXPECT_TRUE(r.half_layer.has_value());
      continue;
    }
    ASSERT_TRUE(r.path.has_value());
    ASSERT_EQ(r.path->paths.size(), 1u);
    EXPECT_TRUE(valid_path(m, r.path->paths[0], x, y));
    ++done;
  }
  EXPECT_EQ(done, 30);
}

TEST(Extender, HamlaceNegativeVerdict) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Instance inst = gen_instance(InstanceKind::kHamlacePlanted, 5, s);
    const HamlaceResult r = hamlace_cycle(inst.matching, *inst.x, *inst.y);
    EXPECT_FALSE(r.cycle.has_value());
    ASSERT_TRUE(r.half_layer.has_value());
    EXPECT_TRUE(naive::has_half_layer(inst.matching, r.half_layer->direction, r.half_layer->parity));
  }
}

TEST(Extender, HamlacePreconditions) {
  const Instance inst = gen_instance(InstanceKind::kHamlace, 5, 3);
  const Vertex x = *inst.x;
  EXPECT_THROW(hamlace_cycle(inst.matching, x, x), std::invalid_argument);
  Vertex same = 0;
  while (same == x || parity(same) != parity(x)) ++same;
  EXPECT_THROW(hamlace_cycle(inst.matching, x, same), std::invalid_argument);
  EXPECT_THROW(hamlace_cycle(Matching(4), 0, 1), std::invalid_argument);

  // Ends matched to each other make the reduction undefined.
  const Matching p = gen_instance(InstanceKind::kPerfectKqd, 5, 4).matching;
  for (Vertex v = 0; v < 32; ++v) {
    if (parity(v) != parity(p.partner(v))) {
      EXPECT_THROW(hamlace_path(p, v, p.partner(v)), std::invalid_argument);
      break;
    }
  }
}

TEST(Extender, BudgetSurfacesAsError) {
  const ExtendOptions tiny{SearchConfig{.node_budget = 1}};
  const Matching m = gen_instance(InstanceKind::kUniformKqd, 4, 9).matching;
  EXPECT_THROW(extend_to_cycle(m, nullptr, tiny), BudgetError);
}
