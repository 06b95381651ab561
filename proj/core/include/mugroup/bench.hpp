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

#ifndef MUGROUP_BENCH_HPP_
#define MUGROUP_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mugroup/baselines.hpp"
#include "mugroup/channel.hpp"
#include "mugroup/grouping.hpp"
#include "mugroup/phy.hpp"

namespace mugroup {

// A+SIFS slot: 2 ms A-MPDU plus 16 us.
inline constexpr double kDefaultSlotSeconds = 2.016e-3;

struct ScheduleSlot {
  Group group;
  UserId primary_user = 0;
  double duration_s = 0.0;
};

// MU air-time-fair round robin: a group of n users gets n slots, one per
// member as primary user.
struct Schedule {
  std::vector<ScheduleSlot> slots;
  double t_su = kDefaultSlotSeconds;

  double cycle_duration() const;
  double air_time(const Group& group) const;
};

// Groups in canonical order; within a group the primary rotates through the
// members in order, so {D,E,F} yields (DEF), (EFD), (FDE). The rotation order
// of a slot is ScheduleSlot::group with the primary first; see
// rotation_order().
Schedule build_schedule(const GroupingSolution& solution,
                        double t_su = kDefaultSlotSeconds);

// Members of slot.group starting at the primary user, in rotated order.
std::vector<UserId> rotation_order(const ScheduleSlot& slot);

// Bits per second over one schedule cycle: objective / M.
double system_throughput(const GroupingSolution& solution,
                         const RateOracle& oracle);

enum class Algorithm { kExhaustive, kBlossom, kGma, kZfs, kSus, kRandom };

std::string_view algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);  // throws ConfigError

enum class Scenario { kUserSweep, kRhoSweep, kRuntimeSweep };

std::string_view scenario_name(Scenario scenario);
Scenario parse_scenario(std::string_view name);  // throws ConfigError

struct ExperimentConfig {
  Scenario scenario = Scenario::kUserSweep;
  std::vector<std::size_t> m_values = {12};
  std::vector<std::size_t> nu_values = {3};
  std::vector<double> rho_values = {0.0};

  // Simulated channels; num_users and seed are set per scenario point.
  CorrelatedRicianSpec channel;
  // When set, channels are read from this interchange file and the first M
  // users are used at every point.
  std::optional<std::string> channel_file;

  PhyConfig phy;
  std::vector<Algorithm> algorithms = {Algorithm::kExhaustive, Algorithm::kGma,
                                       Algorithm::kZfs, Algorithm::kSus,
                                       Algorithm::kRandom};
  std::vector<std::uint64_t> seeds;
  std::string output_path;

  SusParams sus{0.5, kDefaultSusSweep};
  std::uint64_t exhaustive_cap = 10'000'000;
  double t_su = kDefaultSlotSeconds;
  // Runtime column is written as 0 when false, making the CSV reproducible.
  bool record_runtime = true;
  // RuntimeSweep: each algorithm is repeated until this much time has passed.
  double min_timing_seconds = 0.02;

  // Throws ConfigError; also checks that exhaustive search fits the cap at
  // every point where it is requested.
  void validate() const;
};

// JSON config; see README for the schema. Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Channel spec as a JSON object with the CorrelatedRicianSpec field names
// (num_users, num_tx_antennas, num_subcarriers, k_factor_db, rho,
// correlated_user_count, seed). Throws ConfigError.
CorrelatedRicianSpec parse_channel_spec(std::string_view json_text);

struct ResultRow {
  Scenario scenario = Scenario::kUserSweep;
  std::size_t num_users = 0;
  std::size_t max_group_size = 0;
  double rho = 0.0;
  Algorithm algorithm = Algorithm::kGma;
  std::size_t seed_count = 0;
  double mean_mbps = 0.0;
  double p10_mbps = 0.0;
  double p90_mbps = 0.0;
  std::optional<double> ratio_to_opt;  // mean of per-seed ratios
  double runtime_ms = 0.0;             // mean per call
  bool skipped = false;                // exhaustive beyond the cap
  std::optional<double> relative_db;   // RuntimeSweep: 10 log10(t / t_random)

  // Per-seed values behind the aggregates.
  std::vector<double> throughput_mbps;
  std::vector<double> ratios;
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);
std::vector<ResultRow> run_runtime_comparison(const ExperimentConfig& cfg);

inline constexpr std::string_view kCsvHeader =
    "scenario,M,Nu,rho,algorithm,seed_count,mean_mbps,p10_mbps,p90_mbps,"
    "ratio_to_opt,runtime_ms";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

// Linear-interpolated percentile, q in [0, 1]. Throws on an empty sample.
double percentile(std::vector<double> values, double q);

}  // namespace mugroup

#endif  // MUGROUP_BENCH_HPP_
