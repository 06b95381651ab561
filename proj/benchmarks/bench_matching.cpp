// Copyright 2026 The mugroup Authors
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

#include <random>

#include "mugroup/matching.hpp"

namespace {

mugroup::WeightedGraph dense_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(-1.0, 10.0);
  mugroup::WeightedGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j, w(rng));
  }
  return g;
}

void BM_MaxWeightMatching(benchmark::State& state) {
  const auto graph = dense_graph(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mugroup::max_weight_matching(graph));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaxWeightMatching)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_Hungarian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w(0.0, 100.0);
  mugroup::WeightMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = w(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mugroup::hungarian(m));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(4, 64)->Complexity();

}  // namespace
