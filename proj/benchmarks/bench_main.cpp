// Copyright 2026 The gltrees Authors
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

#include "gltrees/inverse.hpp"
#include "gltrees/quotient.hpp"

using namespace gltrees;

namespace {

void BM_CanonicalizeRootings(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    std::vector<FreeTree> trees;
    for (const auto& t : enumerate_rooted(m)) trees.push_back(forget_root(t));
    benchmark::DoNotOptimize(trees);
  }
}
BENCHMARK(BM_CanonicalizeRootings)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_GlAct(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto& targets = enumerate_free(m);
  for (auto _ : state) {
    for (const auto& t : targets) benchmark::DoNotOptimize(gl_act(rooted_star(2), t));
  }
}
BENCHMARK(BM_GlAct)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_GradedRank(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  QuotientOptions opt;
  opt.validate_small_degrees = false;
  for (auto _ : state) benchmark::DoNotOptimize(graded_rank({4, 4, m}, opt).dim_quotient);
}
BENCHMARK(BM_GradedRank)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_QSeries(benchmark::State& state) {
  const Polynomial p = parse_poly("x1^3 - 2*x1*x2*x3 + 3/2*x2^2*x3 + x3^3", 3);
  const auto m = static_cast<std::size_t>(state.range(0));
  const bool tree = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(tree ? q_series_tree(p, m) : q_series_zhao(p, m));
}
BENCHMARK(BM_QSeries)->Args({5, 0})->Args({5, 1})->Args({7, 0})->Args({7, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
