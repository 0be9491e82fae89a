// Copyright 2026 The bhcycle Authors
//
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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "bhcycle/construct.hpp"
#include "bhcycle/faults.hpp"
#include "bhcycle/pathfinder.hpp"
#include "bhcycle/verify.hpp"

namespace {

using namespace bhc;

struct Instance {
  FaultSet faults;
  Edge edge;
};

// Fixed seeded instances so every run measures the same work.
std::vector<Instance> instances(const Topology& t, int count) {
  std::vector<Instance> out;
  const std::size_t size = static_cast<std::size_t>(4 * t.dimension() - 5);
  for (std::uint64_t s = 0; static_cast<int>(out.size()) < count; ++s) {
    FaultSet f = random_conditional_faults(t, size, s);
    const Edge e = t.edges()[mix_seed(s, 1) % t.edges().size()];
    if (!f.contains(e)) out.push_back({std::move(f), e});
  }
  return out;
}

void BM_BuildDef1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Topology::build_def1(n));
}
BENCHMARK(BM_BuildDef1)->DenseRange(2, 5);

void BM_BuildDef2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Topology::build_def2(n));
}
BENCHMARK(BM_BuildDef2)->DenseRange(2, 5);

void BM_Partition(benchmark::State& state) {
  const auto t = Topology::shared(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Partition::by_dimension(*t, 1));
}
BENCHMARK(BM_Partition)->DenseRange(2, 5);

void BM_SelectSplit(benchmark::State& state) {
  const auto t = Topology::shared(static_cast<int>(state.range(0)));
  const auto inst = instances(*t, 16);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_split_dimension(*t, inst[i++ % inst.size()].faults));
  }
}
BENCHMARK(BM_SelectSplit)->DenseRange(3, 5);

void BM_HamPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = Topology::shared(n);
  const FaultSet f = random_conditional_faults(*t, static_cast<std::size_t>(2 * n - 2), 3);
  const Vertex s(0), d(static_cast<std::uint32_t>(t->vertex_count() - 1));
  SearchOptions opt;
  opt.self_check = false;
  for (auto _ : state) benchmark::DoNotOptimize(ham_path(*t, f, s, d, {}, opt));
}
BENCHMARK(BM_HamPath)->DenseRange(2, 3)->Unit(benchmark::kMicrosecond);

void BM_CycleSearch(benchmark::State& state) {
  const auto t = Topology::shared(static_cast<int>(state.range(0)));
  const auto inst = instances(*t, 8);
  std::size_t i = 0;
  for (auto _ : state) {
    const Instance& x = inst[i++ % inst.size()];
    benchmark::DoNotOptimize(ham_cycle_search(*t, x.faults, x.edge));
  }
}
BENCHMARK(BM_CycleSearch)->DenseRange(2, 3)->Unit(benchmark::kMicrosecond);

void BM_Construct(benchmark::State& state) {
  const auto t = Topology::shared(static_cast<int>(state.range(0)));
  const auto inst = instances(*t, 8);
  std::size_t i = 0;
  for (auto _ : state) {
    const Instance& x = inst[i++ % inst.size()];
    benchmark::DoNotOptimize(construct_ham_cycle(*t, x.faults, x.edge));
  }
}
BENCHMARK(BM_Construct)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_VerifyCycle(benchmark::State& state) {
  const auto t = Topology::shared(static_cast<int>(state.range(0)));
  const auto inst = instances(*t, 1);
  const Construction c = construct_ham_cycle(*t, inst[0].faults, inst[0].edge);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_ham_cycle(*t, inst[0].faults, c.cycle, inst[0].edge));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.cycle.size()));
}
BENCHMARK(BM_VerifyCycle)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
