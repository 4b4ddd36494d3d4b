// Copyright 2026 The arealaw Authors
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

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

#include "arealaw/flow.hpp"
#include "arealaw/marking.hpp"
#include "arealaw/simulator.hpp"

namespace {

using namespace arealaw;

// Ring of k vertices, each joined to its neighbour by `mult` parallel edges,
// with half the legs of every vertex surviving.
Marginal ring(int k, int mult) {
  std::vector<std::string> ids;
  for (int i = 0; i < k; ++i) ids.push_back("v" + std::to_string(i));
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < mult; ++j) edges.push_back({ids[i], ids[(i + 1) % k], 1});
  std::map<std::string, int> counts;
  for (int i = 0; i < k; ++i) counts[ids[i]] = (i % 2 == 0) ? mult : mult / 2;
  return resolve_trace(Graph::create(ids, edges), TraceSpec::from_counts(std::move(counts)));
}

void BM_MaxFlow(benchmark::State& state) {
  const auto m = ring(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(max_flow(build_network(m)).value);
}
BENCHMARK(BM_MaxFlow)->Arg(8)->Arg(64)->Arg(512);

void BM_MarkingFromFlow(benchmark::State& state) {
  const auto m = ring(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(marking_from_flow(m, max_flow(build_network(m))));
}
BENCHMARK(BM_MarkingFromFlow)->Arg(8)->Arg(64);

void BM_AreaBruteforce(benchmark::State& state) {
  const auto m = ring(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(area_bruteforce(m).area);
}
BENCHMARK(BM_AreaBruteforce)->Arg(2)->Arg(3)->Arg(4);

void BM_HaarIsometry(benchmark::State& state) {
  const auto dim = state.range(0);
  auto stream = make_stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(haar_isometry(dim, dim, stream));
}
BENCHMARK(BM_HaarIsometry)->Arg(16)->Arg(64)->Arg(256);

void BM_SampleRing(benchmark::State& state) {
  const auto m = ring(4, 2);
  const auto n = state.range(0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto stream = make_stream(2, i++);
    benchmark::DoNotOptimize(reduced_spectrum(build_pure_state(m, n, {}, stream)));
  }
}
BENCHMARK(BM_SampleRing)->Arg(2);

void BM_Wishart(benchmark::State& state) {
  const auto n = state.range(0);
  auto stream = make_stream(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_report(sample_wishart_state(n, n, stream), {}).von_neumann);
}
BENCHMARK(BM_Wishart)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
