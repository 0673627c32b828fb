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

#include <benchmark/benchmark.h>

#include <vector>

#include "cubeham/canonical.hpp"
#include "cubeham/extender.hpp"
#include "cubeham/instances.hpp"
#include "cubeham/oracle.hpp"
#include "cubeham/parallel.hpp"

using namespace cubeham;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel; }

std::vector<Instance> batch(InstanceKind kind, int d, std::size_t n) {
  std::vector<Instance> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) out.push_back(gen_instance(kind, d, s));
  return out;
}

void BM_CanonicalizeBatch(benchmark::State& state) {
  std::vector<Matching> ms;
  for (const Instance& inst : batch(InstanceKind::kUniformKqd, 5, 512)) ms.push_back(inst.matching);
  const std::vector<int> none;
  const DirectionGroup group(5, none);
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize_batch(ms, group, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ms.size()));
}

void BM_OracleFanOut(benchmark::State& state) {
  const std::vector<Instance> insts = batch(InstanceKind::kUniformKqd, 5, 256);
  std::vector<int> out(insts.size());
  for (auto _ : state) {
    for_each_index(insts.size(), exec_of(state), [&](std::size_t k) {
      out[k] = static_cast<int>(extends(insts[k].matching).outcome);
    });
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(insts.size()));
}

void BM_ExtendAvoidingFanOut(benchmark::State& state) {
  const std::vector<Instance> insts = batch(InstanceKind::kBalancedCut, 7, 256);
  std::vector<std::size_t> out(insts.size());
  for (auto _ : state) {
    for_each_index(insts.size(), exec_of(state), [&](std::size_t k) {
      const AvoidResult r = extend_avoiding(insts[k].matching, *insts[k].avoid);
      out[k] = r.certificate ? r.certificate->length() : 0;
    });
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(insts.size()));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_CanonicalizeBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleFanOut)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtendAvoidingFanOut)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
