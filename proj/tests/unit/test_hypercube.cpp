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

#include "cubeham/certificate.hpp"
#include "cubeham/hypercube.hpp"
#include "cubeham/matching.hpp"
#include "support.hpp"

using namespace cubeham;

TEST(Hypercube, NeighborFlipsOneBit) {
  EXPECT_EQ(neighbor(0b101, 2, 3), 0b111u);
  EXPECT_EQ(neighbor(0b0000, 1, 4), 0b0001u);
  for (int d = 1; d <= 6; ++d) {
    for (Vertex u = 0; u < vertex_count(d); ++u) {
      for (int i = 1; i <= d; ++i) EXPECT_EQ(neighbor(neighbor(u, i, d), i, d), u);
    }
  }
  EXPECT_THROW(neighbor(0, 0, 3), std::out_of_range);
  EXPECT_THROW(neighbor(0, 4, 3), std::out_of_range);
  EXPECT_THROW(check_dimension(0), std::invalid_argument);
  EXPECT_THROW(check_dimension(kMaxDimension + 1), std::invalid_argument);
}

TEST(Hypercube, CompressExpandRoundTrip) {
  for (int i = 1; i <= 5; ++i) {
    for (Vertex v = 0; v < 32; ++v) {
      const int b = has_direction(v, i) ? 1 : 0;
      EXPECT_EQ(expand(compress(v, i), i, b), v);
    }
  }
}

TEST(Hypercube, SplitFullLayer) {
  std::vector<Edge> layer;
  for (Vertex u = 0; u < 8; ++u) {
    if (!has_direction(u, 1)) layer.emplace_back(u, u | 1);
  }
  const DirectionSplit s = split(layer, 1);
  EXPECT_TRUE(s.inside0.empty());
  EXPECT_TRUE(s.inside1.empty());
  EXPECT_EQ(s.crossing.size(), 4u);
}

TEST(Hypercube, SplitEmpty) {
  const DirectionSplit s = split(std::vector<Edge>{}, 2);
  EXPECT_TRUE(s.inside0.empty() && s.inside1.empty() && s.crossing.empty());
}

TEST(Hypercube, SplitByBitInspection) {
  const std::vector<Edge> f = {Edge(0b000, 0b011), Edge(0b001, 0b101)};
  const DirectionSplit s = split(f, 3);
  ASSERT_EQ(s.inside0.size(), 1u);
  EXPECT_EQ(s.inside0[0], Edge(0b000, 0b011));
  EXPECT_TRUE(s.inside1.empty());
  ASSERT_EQ(s.crossing.size(), 1u);
  EXPECT_EQ(s.crossing[0], Edge(0b001, 0b101));
}

TEST(Hypercube, TotalLengthExamples) {
  EXPECT_EQ(total_length(std::vector<Edge>{Edge(0, 1)}, 3), 1);
  EXPECT_EQ(total_length(std::vector<Edge>{Edge(0, 0b11)}, 2), 2);
}

TEST(Hypercube, LengthIdentityOnRandomSets) {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    const int d = 4;
    std::vector<Edge> f;
    for (int k = 0; k < 12; ++k) {
      const Vertex a = static_cast<Vertex>(rng.below(16));
      const Vertex b = static_cast<Vertex>(rng.below(16));
      if (a != b) f.emplace_back(a, b);
    }
    long by_length = 0;
    for (const Edge& e : f) by_length += naive::popcount(e.u ^ e.v);
    long by_cuts = 0;
    for (int i = 1; i <= d; ++i) {
      for (const Edge& e : f) by_cuts += naive::bit(e.u, i) != naive::bit(e.v, i);
    }
    EXPECT_EQ(by_length, by_cuts);
    EXPECT_EQ(total_length(f, d), by_length);
    const DirectionSplit s = split(f, 1 + static_cast<int>(rng.below(4)));
    EXPECT_EQ(s.inside0.size() + s.inside1.size() + s.crossing.size(), f.size());
  }
}

TEST(Matching, CountersMatchRecount) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + static_cast<int>(rng.below(5));
    Matching m = naive::random_matching(d, rng, 0.7);
    for (Vertex v = 0; v < m.size(); ++v) {
      if (!m.covered(v) && rng.chance(1, 4)) m.set_label(v, rng.chance(1, 2) ? kTerminal : kForbidden);
    }
    const auto edges = m.edges();
    if (!edges.empty() && rng.chance(1, 2)) m.remove_edge(edges[0].u);
    std::size_t covered = 0;
    std::size_t terminals = 0;
    for (Vertex v = 0; v < m.size(); ++v) {
      covered += m.covered(v);
      terminals += m.slot(v) == kTerminal;
      if (m.covered(v)) EXPECT_EQ(m.partner(m.partner(v)), v);
    }
    EXPECT_EQ(m.covered_count(), covered);
    EXPECT_EQ(m.edge_count() * 2, covered);
    EXPECT_EQ(m.terminal_count(), terminals);
    EXPECT_TRUE(m.is_consistent());
  }
}

TEST(Matching, MaximalityMatchesNaiveScan) {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const int d = 2 + static_cast<int>(rng.below(4));
    Matching m = naive::random_cube_matching(d, rng);
    if (rng.chance(1, 3)) {
      for (Vertex v = 0; v < m.size(); ++v) {
        if (!m.covered(v) && rng.chance(1, 5)) m.set_label(v, kForbidden);
      }
    }
    bool naive_maximal = true;
    for (Vertex u = 0; u < m.size(); ++u) {
      for (int i = 1; i <= d; ++i) {
        const Vertex w = u ^ (Vertex{1} << (i - 1));
        if (m.slot(u) == kUncovered && m.slot(w) == kUncovered) naive_maximal = false;
      }
    }
    EXPECT_EQ(m.is_maximal(), naive_maximal);
  }
}

TEST(Matching, MutationErrors) {
  Matching m(3);
  m.add_edge(0, 7);
  EXPECT_THROW(m.add_edge(0, 1), std::invalid_argument);
  EXPECT_THROW(m.add_edge(2, 2), std::invalid_argument);
  EXPECT_THROW(m.add_edge(2, 8), std::out_of_range);
  EXPECT_THROW(m.set_label(0, kForbidden), std::invalid_argument);
  EXPECT_THROW(m.remove_edge(1), std::invalid_argument);
  m.set_label(1, kForbidden);
  EXPECT_THROW(m.add_edge(1, 3), std::invalid_argument);
  m.remove_edge(7);
  EXPECT_EQ(m.slot(0), kUncovered);
  EXPECT_EQ(m.edge_count(), 0u);
}

TEST(Matching, TranslateMovesLabels) {
  Matching m(3);
  m.add_edge(0, 3);
  m.set_label(5, kForbidden);
  const Matching t = translate(m, 0b110);
  EXPECT_TRUE(t.has_edge(0b110, 0b101));
  EXPECT_EQ(t.slot(0b011), kForbidden);
  EXPECT_EQ(translate(t, 0b110), m);
}

TEST(Certificate, FourCycleIsValid) {
  CycleCertificate c{{0b00, 0b01, 0b11, 0b10}, Matching(2), {}};
  EXPECT_FALSE(certificate_check(c).has_value());
}

TEST(Certificate, RepeatedVertexIsNotSimple) {
  CycleCertificate c{{0, 1, 3, 1}, Matching(2), {}};
  const auto v = certificate_check(c);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->clause, Clause::kNotSimple);
  EXPECT_EQ(v->index, 3u);
}

TEST(Certificate, LongChordOutsideMatching) {
  CycleCertificate c{{0b000, 0b001, 0b111, 0b110, 0b100}, Matching(3), {}};
  const auto v = certificate_check(c);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->clause, Clause::kNonCubeEdge);
  EXPECT_STREQ(clause_name(v->clause), "non-cube edge outside M");
}

TEST(Certificate, OtherClauses) {
  Matching m(3);
  m.add_edge(0, 7);
  CycleCertificate two{{0, 7}, m, {}};
  EXPECT_EQ(certificate_check(two)->clause, Clause::kTooShort);
  CycleCertificate skip{{0, 1, 3, 2}, m, {}};
  EXPECT_EQ(certificate_check(skip)->clause, Clause::kMissingMatchingEdge);
  CycleCertificate range{{0, 1, 9, 2}, Matching(3), {}};
  EXPECT_EQ(certificate_check(range)->clause, Clause::kVertexOutOfRange);
  CycleCertificate avoided{{0, 1, 3, 2}, Matching(3), {3}};
  EXPECT_EQ(certificate_check(avoided)->clause, Clause::kAvoidedVisited);
}

TEST(Certificate, AgreesWithReferenceCheckOnRandomWalks) {
  Rng rng(5);
  for (int t = 0; t < 2000; ++t) {
    const int d = 3;
    Matching m = naive::random_matching(d, rng, 0.3);
    std::vector<Vertex> seq;
    const std::size_t len = 3 + rng.below(6);
    Vertex at = static_cast<Vertex>(rng.below(8));
    for (std::size_t k = 0; k < len; ++k) {
      seq.push_back(at);
      // Half the walks follow cube edges so that valid cycles occur.
      at = rng.chance(1, 2) ? at ^ (Vertex{1} << rng.below(3)) : static_cast<Vertex>(rng.below(8));
    }
    // Bias some walks toward validity by stitching matching edges in.
    if (rng.chance(1, 2) && m.edge_count() == 1) {
      const Edge e = m.edges()[0];
      seq[0] = e.u;
      seq[1] = e.v;
    }
    std::vector<Vertex> avoided;
    CycleCertificate c{seq, m, avoided};
    EXPECT_EQ(!certificate_check(c).has_value(), naive::cycle_ok(m, seq, avoided));
  }
}

TEST(Certificate, LinearForest) {
  Matching m(2);
  m.add_edge(0, 1);
  m.set_label(2, kTerminal);
  m.set_label(3, kTerminal);
  LinearForestCertificate ok{{{2, 0, 1, 3}}, {2, 3}, m, {}};
  EXPECT_FALSE(certificate_check(ok).has_value());
  LinearForestCertificate wrong_ends{{{0, 1, 3, 2}}, {2, 3}, m, {}};
  ASSERT_TRUE(certificate_check(wrong_ends).has_value());
  EXPECT_EQ(certificate_check(wrong_ends)->clause, Clause::kTerminalMismatch);
  LinearForestCertificate empty{{{}}, {2, 3}, m, {}};
  EXPECT_TRUE(certificate_check(empty).has_value());
}
