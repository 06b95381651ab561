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

#include "mugroup/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mugroup/errors.hpp"
#include "mugroup/gma.hpp"

namespace mugroup {

double Schedule::cycle_duration() const {
  double total = 0.0;
  for (const ScheduleSlot& s : slots) total += s.duration_s;
  return total;
}

double Schedule::air_time(const Group& group) const {
  double total = 0.0;
  for (const ScheduleSlot& s : slots) {
    if (s.group == group) total += s.duration_s;
  }
  return total;
}

Schedule build_schedule(const GroupingSolution& solution, double t_su) {
  if (!(t_su > 0.0) || !std::isfinite(t_su)) {
    throw std::invalid_argument("t_su must be positive");
  }
  const PartitionReport report = validate_partition(
      solution.groups, solution.num_users, solution.num_users);
  if (!report.ok()) {
    throw std::invalid_argument("not a valid partition: " + report.describe());
  }
  std::vector<Group> groups = solution.groups;
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.least() < b.least(); });
  Schedule schedule;
  schedule.t_su = t_su;
  for (const Group& g : groups) {
    for (UserId primary : g) schedule.slots.push_back({g, primary, t_su});
  }
  return schedule;
}

std::vector<UserId> rotation_order(const ScheduleSlot& slot) {
  const auto members = slot.group.members();
  const auto it = std::find(members.begin(), members.end(), slot.primary_user);
  if (it == members.end()) {
    throw std::invalid_argument("primary user is not a group member");
  }
  std::vector<UserId> order(it, members.end());
  order.insert(order.end(), members.begin(), it);
  return order;
}

double system_throughput(const GroupingSolution& solution,
                         const RateOracle& oracle) {
  if (solution.num_users == 0) throw std::invalid_argument("empty solution");
  return objective(solution.groups, oracle) /
         static_cast<double>(solution.num_users);
}

namespace {

constexpr std::pair<Algorithm, std::string_view> kAlgorithmNames[] = {
    {Algorithm::kExhaustive, "exhaustive"}, {Algorithm::kBlossom, "blossom"},
    {Algorithm::kGma, "gma"},               {Algorithm::kZfs, "zfs"},
    {Algorithm::kSus, "sus"},               {Algorithm::kRandom, "random"},
};

constexpr std::pair<Scenario, std::string_view> kScenarioNames[] = {
    {Scenario::kUserSweep, "UserSweep"},
    {Scenario::kRhoSweep, "RhoSweep"},
    {Scenario::kRuntimeSweep, "RuntimeSweep"},
};

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  for (const auto& [a, name] : kAlgorithmNames) {
    if (a == algorithm) return name;
  }
  throw std::invalid_argument("unknown algorithm");
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [a, n] : kAlgorithmNames) {
    if (n == name) return a;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view scenario_name(Scenario scenario) {
  for (const auto& [s, name] : kScenarioNames) {
    if (s == scenario) return name;
  }
  throw std::invalid_argument("unknown scenario");
}

Scenario parse_scenario(std::string_view name) {
  for (const auto& [s, n] : kScenarioNames) {
    if (n == name) return s;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of no values");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

using Clock = std::chrono::steady_clock;

struct PointKey {
  std::size_t m;
  std::size_t nu;
  double rho;
};

class ChannelSource {
 public:
  explicit ChannelSource(const ExperimentConfig& cfg) : cfg_(cfg) {
    if (cfg.channel_file) {
      std::ifstream in(*cfg.channel_file);
      if (!in) throw ConfigError("cannot open channel file " + *cfg.channel_file);
      file_ = std::make_shared<ChannelSet>(load_channels(in));
    }
  }

  std::shared_ptr<const ChannelSet> get(const PointKey& point,
                                        std::uint64_t seed) const {
    if (file_) {
      return std::make_shared<ChannelSet>(file_->first_users(point.m));
    }
    CorrelatedRicianSpec spec = cfg_.channel;
    spec.num_users = point.m;
    spec.rho = point.rho;
    spec.seed = seed;
    return std::make_shared<ChannelSet>(generate_rician(spec));
  }

 private:
  const ExperimentConfig& cfg_;
  std::shared_ptr<ChannelSet> file_;
};

struct RunOutcome {
  GroupingSolution solution;
  double seconds = 0.0;
};

// Each run gets its own oracle so that timings include rate evaluation and
// do not depend on which algorithm ran first.
RunOutcome run_algorithm(Algorithm algorithm, const ExperimentConfig& cfg,
                         const std::shared_ptr<const ChannelSet>& channels,
                         std::size_t m, std::size_t nu, std::uint64_t seed) {
  RateOracle oracle = make_rate_oracle(channels, cfg.phy, nu);
  const auto start = Clock::now();
  RunOutcome out;
  switch (algorithm) {
    case Algorithm::kExhaustive:
      out.solution = exhaustive_search(oracle, m, nu, {cfg.exhaustive_cap});
      break;
    case Algorithm::kBlossom:
      out.solution = optimal_mu2_su(oracle, m);
      break;
    case Algorithm::kGma:
      out.solution = gma(oracle, m, nu);
      break;
    case Algorithm::kZfs:
      out.solution = zfs_grouping(oracle, m, nu);
      break;
    case Algorithm::kSus:
      out.solution = sus_grouping(*channels, oracle, m, nu, cfg.sus);
      break;
    case Algorithm::kRandom:
      out.solution = random_grouping(oracle, m, nu, seed);
      break;
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

double to_mbps(const GroupingSolution& solution) {
  return solution.objective_value / static_cast<double>(solution.num_users) / 1e6;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void finalize(ResultRow& row) {
  row.seed_count = row.throughput_mbps.size();
  if (row.throughput_mbps.empty()) return;
  row.mean_mbps = mean(row.throughput_mbps);
  row.p10_mbps = percentile(row.throughput_mbps, 0.10);
  row.p90_mbps = percentile(row.throughput_mbps, 0.90);
  if (!row.ratios.empty()) row.ratio_to_opt = mean(row.ratios);
}

std::vector<PointKey> grid(const ExperimentConfig& cfg) {
  std::vector<PointKey> points;
  for (std::size_t m : cfg.m_values) {
    for (std::size_t nu : cfg.nu_values) {
      for (double rho : cfg.rho_values) points.push_back({m, nu, rho});
    }
  }
  return points;
}

ResultRow blank_row(const ExperimentConfig& cfg, const PointKey& p,
                    Algorithm a) {
  ResultRow row;
  row.scenario = cfg.scenario;
  row.num_users = p.m;
  row.max_group_size = p.nu;
  row.rho = p.rho;
  row.algorithm = a;
  return row;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.scenario == Scenario::kRuntimeSweep) return run_runtime_comparison(cfg);

  const ChannelSource source(cfg);
  std::vector<ResultRow> rows;
  const bool has_opt =
      std::find(cfg.algorithms.begin(), cfg.algorithms.end(),
                Algorithm::kExhaustive) != cfg.algorithms.end();

  for (const PointKey& point : grid(cfg)) {
    std::vector<ResultRow> point_rows;
    for (Algorithm a : cfg.algorithms) point_rows.push_back(blank_row(cfg, point, a));
    std::vector<double> runtimes(cfg.algorithms.size(), 0.0);

    for (std::uint64_t seed : cfg.seeds) {
      const auto channels = source.get(point, seed);
      double optimum = 0.0;
      std::vector<RunOutcome> outcomes;
      for (Algorithm a : cfg.algorithms) {
        outcomes.push_back(run_algorithm(a, cfg, channels, point.m, point.nu, seed));
        if (a == Algorithm::kExhaustive) optimum = outcomes.back().solution.objective_value;
      }
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        ResultRow& row = point_rows[i];
        row.throughput_mbps.push_back(to_mbps(outcomes[i].solution));
        if (has_opt && optimum > 0.0) {
          row.ratios.push_back(outcomes[i].solution.objective_value / optimum);
        }
        runtimes[i] += outcomes[i].seconds;
      }
    }
    for (std::size_t i = 0; i < point_rows.size(); ++i) {
      ResultRow& row = point_rows[i];
      finalize(row);
      if (cfg.record_runtime) {
        row.runtime_ms = 1e3 * runtimes[i] / static_cast<double>(cfg.seeds.size());
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ResultRow> run_runtime_comparison(const ExperimentConfig& cfg) {
  cfg.validate();
  const ChannelSource source(cfg);

  // Random selection is the reference, so it is always timed.
  std::vector<Algorithm> algorithms = cfg.algorithms;
  if (std::find(algorithms.begin(), algorithms.end(), Algorithm::kRandom) ==
      algorithms.end()) {
    algorithms.push_back(Algorithm::kRandom);
  }

  std::vector<ResultRow> rows;
  for (const PointKey& point : grid(cfg)) {
    const bool exhaustive_fits =
        count_partitions(point.m, point.nu) <= cfg.exhaustive_cap;
    std::vector<ResultRow> point_rows;
    std::vector<double> seconds(algorithms.size(), 0.0);
    for (Algorithm a : algorithms) {
      point_rows.push_back(blank_row(cfg, point, a));
      if (a == Algorithm::kExhaustive && !exhaustive_fits) point_rows.back().skipped = true;
    }

    for (std::uint64_t seed : cfg.seeds) {
      const auto channels = source.get(point, seed);
      for (std::size_t i = 0; i < algorithms.size(); ++i) {
        if (point_rows[i].skipped) continue;
        // Repeat until the measurement window is filled; report per call.
        std::size_t reps = 0;
        double elapsed = 0.0;
        RunOutcome last;
        do {
          last = run_algorithm(algorithms[i], cfg, channels, point.m, point.nu, seed);
          elapsed += last.seconds;
          ++reps;
        } while (elapsed < cfg.min_timing_seconds);
        seconds[i] += elapsed / static_cast<double>(reps);
        point_rows[i].throughput_mbps.push_back(to_mbps(last.solution));
      }
    }

    const std::size_t random_index = static_cast<std::size_t>(
        std::find(algorithms.begin(), algorithms.end(), Algorithm::kRandom) -
        algorithms.begin());
    const double random_seconds = seconds[random_index];
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      ResultRow& row = point_rows[i];
      finalize(row);
      if (row.skipped) {
        rows.push_back(std::move(row));
        continue;
      }
      const double per_call = seconds[i] / static_cast<double>(cfg.seeds.size());
      row.runtime_ms = 1e3 * per_call;
      row.relative_db = i == random_index
                            ? 0.0
                            : 10.0 * std::log10(seconds[i] / random_seconds);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  for (const ResultRow& r : rows) {
    out << scenario_name(r.scenario) << ',' << r.num_users << ','
        << r.max_group_size << ',' << num(r.rho) << ',' << algorithm_name(r.algorithm)
        << ',' << r.seed_count << ',';
    if (r.skipped) {
      out << ",,,,skipped\n";
      continue;
    }
    out << num(r.mean_mbps) << ',' << num(r.p10_mbps) << ',' << num(r.p90_mbps)
        << ',' << (r.ratio_to_opt ? num(*r.ratio_to_opt) : std::string()) << ','
        << num(r.runtime_ms) << '\n';
  }
}

}  // namespace mugroup
