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

#include <atomic>
#include <set>
#include <stdexcept>

#include "cubeham/canonical.hpp"
#include "cubeham/instances.hpp"
#include "cubeham/layers.hpp"
#include "cubeham/parallel.hpp"
#include "cubeham/property_h.hpp"
#include "support.hpp"

using namespace cubeham;

TEST(Instances, ParityClassPairsTheEvenVertices) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Matching m = gen_instance(InstanceKind::kParityClass, 3, s).matching;
    EXPECT_EQ(m.edge_count(), 2u);
    for (const Edge& e : m.edges()) {
      EXPECT_EQ(naive::popcount(e.u) % 2, 0);
      EXPECT_EQ(naive::popcount(e.v) % 2, 0);
    }
  }
}

TEST(Instances, PlantedHalfLayerIsFound) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Matching m = gen_instance(InstanceKind::kHalfLayerPlanted, 5, s).matching;
    bool found = false;
    for (int i = 1; i <= 5; ++i) found = found || naive::has_half_layer(m, i, 0) || naive::has_half_layer(m, i, 1);
    EXPECT_TRUE(found);
    EXPECT_FALSE(find_layers(m, LayerFilter{true, false, false, false, false}).empty());
  }
}

TEST(Instances, PerfectCoversEverything) {
  const Matching m = gen_instance(InstanceKind::kPerfectKqd, 4, 7).matching;
  EXPECT_EQ(m.edge_count(), 8u);
  EXPECT_TRUE(m.is_perfect());
}

TEST(Instances, FamiliesHoldTheirDefinitions) {
  for (const InstanceKind k : all_instance_kinds()) {
    for (int d = 3; d <= 6; ++d) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        Instance inst;
        try {
          inst = gen_instance(k, d, s);
        } catch (const std::invalid_argument&) {
          continue;  // dimension not supported by this family
        }
        EXPECT_TRUE(in_family(inst));
        EXPECT_TRUE(inst.matching.is_consistent());
        const Matching& m = inst.matching;
        switch (k) {
          case InstanceKind::kUniformQd:
            EXPECT_TRUE(m.all_cube_edges());
            break;
          case InstanceKind::kHSatisfying:
          case InstanceKind::kCrossingHeavy:
          case InstanceKind::kBalancedCut:
            EXPECT_TRUE(naive::property_h(m, *inst.avoid));
            break;
          case InstanceKind::kHViolating:
            EXPECT_FALSE(naive::property_h(m, *inst.avoid));
            break;
          case InstanceKind::kHamlace:
          case InstanceKind::kHamlacePlanted: {
            EXPECT_EQ(m.covered_count() + 2, m.size());
            EXPECT_NE(naive::popcount(*inst.x) % 2, naive::popcount(*inst.y) % 2);
            bool layer = false;
            for (int i = 1; i <= d; ++i) layer = layer || naive::has_half_layer(m, i, 0) || naive::has_half_layer(m, i, 1);
            EXPECT_EQ(layer, k == InstanceKind::kHamlacePlanted);
            break;
          }
          default:
            break;
        }
      }
    }
  }
}

TEST(Instances, DeterministicInKindDimensionSeed) {
  for (const InstanceKind k : all_instance_kinds()) {
    const Instance a = gen_instance(k, 5, 42);
    const Instance b = gen_instance(k, 5, 42);
    EXPECT_EQ(a.matching, b.matching) << instance_kind_name(k);
    EXPECT_EQ(parse_instance_kind(instance_kind_name(k)), k);
  }
  EXPECT_FALSE(parse_instance_kind("no_such_kind").has_value());
  EXPECT_THROW(gen_instance(InstanceKind::kHamlace, 2, 0), std::invalid_argument);
}

TEST(Instances, SeedsGiveDifferentInstances) {
  std::set<CanonicalForm> seen;
  for (std::uint64_t s = 0; s < 50; ++s) seen.insert(encode(gen_instance(InstanceKind::kUniformKqd, 5, s).matching));
  EXPECT_GT(seen.size(), 45u);
}

TEST(Parallel, SerialAndParallelAgree) {
  std::vector<Matching> batch;
  for (std::uint64_t s = 0; s < 200; ++s) batch.push_back(gen_instance(InstanceKind::kUniformKqd, 5, s).matching);
  const std::vector<int> none;
  const DirectionGroup group(5, none);
  EXPECT_EQ(canonicalize_batch(batch, group, Exec::kSerial), canonicalize_batch(batch, group, Exec::kParallel));
  std::vector<int> out_serial(1000);
  std::vector<int> out_parallel(1000);
  for_each_index(1000, Exec::kSerial, [&](std::size_t k) { out_serial[k] = static_cast<int>(k * k % 97); });
  for_each_index(1000, Exec::kParallel, [&](std::size_t k) { out_parallel[k] = static_cast<int>(k * k % 97); });
  EXPECT_EQ(out_serial, out_parallel);
  EXPECT_GE(worker_count(), 1);
}

TEST(Parallel, ExceptionsPropagate) {
  for (const Exec e : {Exec::kSerial, Exec::kParallel}) {
    std::atomic<int> ran{0};
    EXPECT_THROW(for_each_index(100, e,
                                [&](std::size_t k) {
                                  ++ran;
                                  if (k == 37) throw std::runtime_error("boom");
                                }),
                 std::runtime_error);
    EXPECT_GE(ran.load(), 1);
  }
}
