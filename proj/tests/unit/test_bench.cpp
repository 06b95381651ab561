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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "mugroup/bench.hpp"
#include "mugroup/errors.hpp"
#include "support.hpp"

namespace mugroup {
namespace {

enum : UserId { A, B, C, D, E, F };

GroupingSolution solution_of(std::vector<Group> groups, std::size_t m) {
  return GroupingSolution{std::move(groups), m, 0.0};
}

TEST(Schedule, RotatesPrimaryWithinEachGroup) {
  const auto schedule =
      build_schedule(solution_of({{D, E, F}, {A}, {B, C}}, 6), 1e-3);
  const std::vector<std::vector<UserId>> expected = {
      {A}, {B, C}, {C, B}, {D, E, F}, {E, F, D}, {F, D, E}};
  ASSERT_EQ(schedule.slots.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(rotation_order(schedule.slots[i]), expected[i]) << "slot " << i;
    EXPECT_EQ(schedule.slots[i].primary_user, expected[i][0]);
    EXPECT_EQ(schedule.slots[i].duration_s, 1e-3);
  }
  EXPECT_DOUBLE_EQ(schedule.air_time(Group{D, E, F}), 3e-3);
  EXPECT_DOUBLE_EQ(schedule.cycle_duration(), 6e-3);
}

TEST(Schedule, AllSingleUserAndOneLargeGroup) {
  const auto su = build_schedule(solution_of({{0}, {1}, {2}}, 3));
  EXPECT_EQ(su.slots.size(), 3u);
  EXPECT_EQ(su.t_su, kDefaultSlotSeconds);
  const auto mu = build_schedule(solution_of({{0, 1, 2}}, 3));
  EXPECT_EQ(mu.slots.size(), 3u);
  EXPECT_DOUBLE_EQ(mu.air_time(Group{0, 1, 2}), 3 * kDefaultSlotSeconds);
}

TEST(Schedule, Errors) {
  EXPECT_THROW(build_schedule(solution_of({{0}, {0, 1}}, 2)), std::invalid_argument);
  EXPECT_THROW(build_schedule(solution_of({{0}}, 1), 0.0), std::invalid_argument);
  EXPECT_THROW(rotation_order(ScheduleSlot{Group{1, 2}, 0, 1.0}), std::invalid_argument);
}

TEST(Schedule, AirTimeFairness) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 15);
    const auto groups = testing::random_valid_partition(rng, m, 4);
    const auto schedule = build_schedule(solution_of(groups, m), 2e-3);
    std::vector<int> primary(m, 0);
    for (const auto& slot : schedule.slots) ++primary[slot.primary_user];
    for (int count : primary) EXPECT_EQ(count, 1);
    for (const Group& g : groups) {
      EXPECT_NEAR(schedule.air_time(g), static_cast<double>(g.size()) * 2e-3, 1e-15);
    }
    EXPECT_NEAR(schedule.cycle_duration(), static_cast<double>(m) * 2e-3, 1e-12);
  }
}

TEST(SystemThroughput, Definition) {
  const auto oracle = RateOracle::from_table(3, 2, {{Group{0}, 2.0}, {Group{1, 2}, 3.0}});
  EXPECT_DOUBLE_EQ(system_throughput(solution_of({{0}, {1, 2}}, 3), oracle), 8.0 / 3.0);
  const auto flat = RateOracle(4, 1, [](const Group&) { return 7.0; });
  EXPECT_DOUBLE_EQ(system_throughput(solution_of({{0}, {1}, {2}, {3}}, 4), flat), 7.0);
}

TEST(SystemThroughput, ArgmaxInvariantUnderRescaling) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(0.0, 10.0);
    std::map<std::uint64_t, double> table;
    for (std::uint64_t mask = 1; mask < 64; ++mask) table[mask] = d(rng);
    const RateOracle base(6, 3, [table](const Group& g) { return table.at(g.mask()); });
    const RateOracle scaled(6, 3, [table](const Group& g) { return 4.0 * table.at(g.mask()); });
    const auto a = exhaustive_search(base, 6, 3);
    const auto b = exhaustive_search(scaled, 6, 3);
    EXPECT_EQ(a.groups, b.groups);
    EXPECT_NEAR(system_throughput(b, scaled), 4.0 * system_throughput(a, base), 1e-9);
  }
}

TEST(Percentile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(percentile({3, 1, 2}, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(percentile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 0.1), 2.0);
  EXPECT_DOUBLE_EQ(percentile({0, 10}, 0.9), 9.0);
  EXPECT_DOUBLE_EQ(percentile({4}, 0.9), 4.0);
  EXPECT_THROW(percentile({}, 0.5), std::invalid_argument);
  EXPECT_THROW(percentile({1}, 1.5), std::invalid_argument);
}

TEST(Names, RoundTrip) {
  for (Algorithm a : {Algorithm::kExhaustive, Algorithm::kBlossom, Algorithm::kGma,
                      Algorithm::kZfs, Algorithm::kSus, Algorithm::kRandom}) {
    EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  }
  for (Scenario s : {Scenario::kUserSweep, Scenario::kRhoSweep, Scenario::kRuntimeSweep}) {
    EXPECT_EQ(parse_scenario(scenario_name(s)), s);
  }
  EXPECT_THROW(parse_algorithm("simulated-annealing"), ConfigError);
  EXPECT_THROW(parse_scenario("Sweep"), ConfigError);
}

TEST(ExperimentConfig, ParsesFullSchema) {
  const auto cfg = parse_experiment_config(R"({
    "scenario": "RhoSweep",
    "m_values": [8], "nu_values": [2, 3], "rho_values": [0.0, 0.5],
    "channel": {"num_tx_antennas": 4, "num_subcarriers": 2, "k_factor_db": 6,
                "correlated_user_count": 3},
    "phy": {"bandwidth_hz": 20e6, "noise_power": 0.1, "total_power": 2,
            "rate_mode": "mcs", "mac_overhead": true},
    "algorithms": ["gma", "random"],
    "num_seeds": 4,
    "output": "out.csv",
    "sus": {"alpha": 0.4, "sweep": [0.3]},
    "exhaustive_cap": 1000, "t_su": 0.001, "record_runtime": false,
    "min_timing_seconds": 0.5
  })");
  EXPECT_EQ(cfg.scenario, Scenario::kRhoSweep);
  EXPECT_EQ(cfg.nu_values, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(cfg.channel.num_subcarriers, 2u);
  EXPECT_EQ(cfg.channel.correlated_user_count, 3u);
  EXPECT_EQ(cfg.phy.rate_mode, RateMode::kMcsMapped);
  EXPECT_TRUE(cfg.phy.mac_overhead_enabled);
  EXPECT_EQ(cfg.algorithms, (std::vector<Algorithm>{Algorithm::kGma, Algorithm::kRandom}));
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_EQ(cfg.output_path, "out.csv");
  EXPECT_EQ(cfg.sus.sweep, std::vector<double>{0.3});
  EXPECT_FALSE(cfg.record_runtime);
}

TEST(ExperimentConfig, RejectsBadInput) {
  const char* bad[] = {
      "not json",
      "[1, 2]",
      R"({"num_seeds": 2, "bogus": 1})",
      R"({"seeds": []})",
      R"({"num_seeds": 2, "scenario": "Nope"})",
      R"({"num_seeds": 2, "algorithms": ["gma", "magic"]})",
      R"({"num_seeds": 2, "nu_values": [5]})",
      R"({"num_seeds": 2, "rho_values": [1.5]})",
      R"({"num_seeds": 2, "m_values": [14]})",
      R"({"num_seeds": 2, "phy": {"noise_power": 0}})",
      R"({"num_seeds": 2, "phy": {"rate_mode": "fast"}})",
      R"({"num_seeds": 2, "sus": {"alpha": 2}})",
      R"({"num_seeds": 2, "seeds": [1]})",
      R"({"num_seeds": 2, "channel_file": "/nonexistent/file"})",
      R"({"num_seeds": "two"})",
  };
  for (const char* text : bad) {
    EXPECT_THROW(parse_experiment_config(text), ConfigError) << text;
  }
  EXPECT_THROW(load_experiment_config("/nonexistent/config.json"), ConfigError);
}

TEST(ExperimentConfig, ExhaustiveCapAppliesOnlyWhenRequested) {
  EXPECT_NO_THROW(parse_experiment_config(
      R"({"num_seeds": 1, "m_values": [14], "algorithms": ["gma"]})"));
  EXPECT_NO_THROW(parse_experiment_config(
      R"({"num_seeds": 1, "m_values": [14], "scenario": "RuntimeSweep"})"));
}

TEST(ChannelSpec, Parses) {
  const auto spec = parse_channel_spec(
      R"({"num_users": 5, "num_tx_antennas": 2, "seed": 9, "rho": 0.5,
          "correlated_user_count": 2})");
  EXPECT_EQ(spec.num_users, 5u);
  EXPECT_EQ(spec.seed, 9u);
  EXPECT_THROW(parse_channel_spec(R"({"num_users": 0})"), ConfigError);
  EXPECT_THROW(parse_channel_spec(R"({"users": 3})"), ConfigError);
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.m_values = {4, 6};
  cfg.nu_values = {2};
  cfg.algorithms = {Algorithm::kExhaustive, Algorithm::kBlossom, Algorithm::kGma,
                    Algorithm::kZfs, Algorithm::kSus, Algorithm::kRandom};
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.record_runtime = false;
  return cfg;
}

TEST(RunExperiment, BlossomRowEqualsFullSearch) {
  const auto rows = run_experiment(small_config());
  ASSERT_EQ(rows.size(), 12u);
  for (std::size_t i = 0; i < rows.size(); i += 6) {
    EXPECT_EQ(rows[i].algorithm, Algorithm::kExhaustive);
    EXPECT_EQ(rows[i + 1].algorithm, Algorithm::kBlossom);
    EXPECT_EQ(rows[i].throughput_mbps, rows[i + 1].throughput_mbps);
    EXPECT_EQ(rows[i].throughput_mbps, rows[i + 2].throughput_mbps);
    for (std::size_t k = i; k < i + 6; ++k) {
      EXPECT_EQ(rows[k].seed_count, 5u);
      ASSERT_TRUE(rows[k].ratio_to_opt.has_value());
      EXPECT_LE(*rows[k].ratio_to_opt, 1.0 + 1e-9);
      EXPECT_GE(*rows[k].ratio_to_opt, 0.0);
      EXPECT_LE(rows[k].p10_mbps, rows[k].mean_mbps);
      EXPECT_GE(rows[k].p90_mbps, rows[k].mean_mbps);
    }
  }
}

TEST(RunExperiment, CsvIsDeterministic) {
  std::ostringstream a, b;
  write_csv(a, run_experiment(small_config()));
  write_csv(b, run_experiment(small_config()));
  EXPECT_EQ(a.str(), b.str());
  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, kCsvHeader);
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first.rfind("UserSweep,4,2,0.000000,exhaustive,5,", 0), 0u) << first;
}

TEST(RunExperiment, UsesChannelFile) {
  const std::string path = ::testing::TempDir() + "mugroup_channels.txt";
  {
    std::ofstream out(path);
    write_channels(out, testing::rician(6, 42));
  }
  auto cfg = small_config();
  cfg.channel_file = path;
  cfg.seeds = {0, 1};
  const auto rows = run_experiment(cfg);
  // Same channels for every seed.
  EXPECT_EQ(rows[0].throughput_mbps[0], rows[0].throughput_mbps[1]);
  std::remove(path.c_str());
}

TEST(RuntimeComparison, RandomIsTheZeroDecibelReference) {
  ExperimentConfig cfg;
  cfg.scenario = Scenario::kRuntimeSweep;
  cfg.m_values = {6, 14};
  cfg.nu_values = {3};
  cfg.algorithms = {Algorithm::kExhaustive, Algorithm::kGma, Algorithm::kRandom};
  cfg.seeds = {1};
  cfg.min_timing_seconds = 0.001;
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    if (r.algorithm == Algorithm::kRandom) {
      ASSERT_TRUE(r.relative_db.has_value());
      EXPECT_EQ(*r.relative_db, 0.0);
    }
  }
  EXPECT_FALSE(rows[0].skipped);
  EXPECT_TRUE(rows[3].skipped);  // M=14 exceeds the partition cap
  std::ostringstream csv;
  write_csv(csv, rows);
  EXPECT_NE(csv.str().find("skipped"), std::string::npos);
}

}  // namespace
}  // namespace mugroup
