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

#include "mugroup/baselines.hpp"
#include "mugroup/channel.hpp"
#include "mugroup/gma.hpp"
#include "mugroup/grouping.hpp"
#include "mugroup/phy.hpp"
#include "mugroup/rate_oracle.hpp"

namespace {

mugroup::ChannelSet channels_for(std::size_t m) {
  mugroup::CorrelatedRicianSpec spec;
  spec.num_users = m;
  spec.seed = 3;
  return mugroup::generate_rician(spec);
}

// A fresh oracle per iteration so rate evaluation is part of the cost.
void BM_Gma(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto channels = channels_for(m);
  for (auto _ : state) {
    auto oracle = mugroup::make_rate_oracle(channels, mugroup::PhyConfig{}, 3);
    benchmark::DoNotOptimize(mugroup::gma(oracle, m, 3));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gma)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_Zfs(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto channels = channels_for(m);
  for (auto _ : state) {
    auto oracle = mugroup::make_rate_oracle(channels, mugroup::PhyConfig{}, 3);
    benchmark::DoNotOptimize(mugroup::zfs_grouping(oracle, m, 3));
  }
}
BENCHMARK(BM_Zfs)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_Exhaustive(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto channels = channels_for(m);
  for (auto _ : state) {
    auto oracle = mugroup::make_rate_oracle(channels, mugroup::PhyConfig{}, 3);
    benchmark::DoNotOptimize(mugroup::exhaustive_search(oracle, m, 3));
  }
}
BENCHMARK(BM_Exhaustive)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_PartitionEnumeration(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    mugroup::PartitionEnumerator e(m, 3);
    std::size_t count = 0;
    while (e.next()) ++count;
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_PartitionEnumeration)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

}  // namespace
