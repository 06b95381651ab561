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

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mugroup/bench.hpp"
#include "mugroup/errors.hpp"

namespace mugroup {

void ExperimentConfig::validate() const {
  if (m_values.empty()) throw ConfigError("m_values must not be empty");
  if (nu_values.empty()) throw ConfigError("nu_values must not be empty");
  if (rho_values.empty()) throw ConfigError("rho_values must not be empty");
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
  if (algorithms.empty()) throw ConfigError("algorithms must not be empty");
  for (std::size_t m : m_values) {
    if (m == 0 || m > 64) throw ConfigError("M must lie in [1, 64]");
    if (channel.correlated_user_count > m && !channel_file) {
      throw ConfigError("correlated_user_count exceeds M=" + std::to_string(m));
    }
  }
  for (std::size_t nu : nu_values) {
    if (nu < 1) throw ConfigError("Nu must be >= 1");
    if (nu > channel.num_tx_antennas && !channel_file) {
      throw ConfigError("Nu=" + std::to_string(nu) + " exceeds N_t=" +
                        std::to_string(channel.num_tx_antennas));
    }
    if (nu < 2 && std::find(algorithms.begin(), algorithms.end(),
                            Algorithm::kGma) != algorithms.end()) {
      throw ConfigError("gma needs Nu >= 2");
    }
  }
  for (double rho : rho_values) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
  }
  if (!(t_su > 0.0)) throw ConfigError("t_su must be positive");
  if (!(min_timing_seconds >= 0.0)) {
    throw ConfigError("min_timing_seconds must be >= 0");
  }
  try {
    sus.validate();
    CorrelatedRicianSpec probe = channel;
    probe.num_users = std::max<std::size_t>(probe.correlated_user_count, 1);
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  phy.validate();

  if (scenario != Scenario::kRuntimeSweep &&
      std::find(algorithms.begin(), algorithms.end(), Algorithm::kExhaustive) !=
          algorithms.end()) {
    for (std::size_t m : m_values) {
      for (std::size_t nu : nu_values) {
        const std::uint64_t count = count_partitions(m, nu);
        if (count > exhaustive_cap) {
          throw ConfigError("exhaustive search at M=" + std::to_string(m) +
                            ", Nu=" + std::to_string(nu) + " needs " +
                            std::to_string(count) + " partitions, cap is " +
                            std::to_string(exhaustive_cap));
        }
      }
    }
  }

  if (channel_file) {
    std::ifstream in(*channel_file);
    if (!in) throw ConfigError("cannot open channel file " + *channel_file);
  }
}

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

CorrelatedRicianSpec parse_channel(const json& j) {
  reject_unknown(j,
                 {"num_tx_antennas", "num_subcarriers", "k_factor_db",
                  "correlated_user_count"},
                 "channel");
  CorrelatedRicianSpec spec;
  read(j, "num_tx_antennas", spec.num_tx_antennas);
  read(j, "num_subcarriers", spec.num_subcarriers);
  read(j, "k_factor_db", spec.k_factor_db);
  read(j, "correlated_user_count", spec.correlated_user_count);
  return spec;
}

PhyConfig parse_phy(const json& j) {
  reject_unknown(j,
                 {"bandwidth_hz", "noise_power", "total_power", "rate_mode",
                  "mac_overhead"},
                 "phy");
  PhyConfig phy;
  read(j, "bandwidth_hz", phy.bandwidth_hz);
  read(j, "noise_power", phy.noise_power);
  read(j, "total_power", phy.total_power);
  read(j, "mac_overhead", phy.mac_overhead_enabled);
  if (j.contains("rate_mode")) {
    const std::string mode = j.at("rate_mode").get<std::string>();
    if (mode == "shannon") {
      phy.rate_mode = RateMode::kShannonCapacity;
    } else if (mode == "mcs") {
      phy.rate_mode = RateMode::kMcsMapped;
    } else {
      throw ConfigError("rate_mode must be 'shannon' or 'mcs', got '" + mode + "'");
    }
  }
  return phy;
}

ExperimentConfig parse_root(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"scenario", "m_values", "nu_values", "rho_values", "channel",
                  "channel_file", "phy", "algorithms", "seeds", "num_seeds",
                  "output", "sus", "exhaustive_cap", "t_su", "record_runtime",
                  "min_timing_seconds"},
                 "config");
  ExperimentConfig cfg;
  if (j.contains("scenario")) cfg.scenario = parse_scenario(j.at("scenario").get<std::string>());
  read(j, "m_values", cfg.m_values);
  read(j, "nu_values", cfg.nu_values);
  read(j, "rho_values", cfg.rho_values);
  if (j.contains("channel")) cfg.channel = parse_channel(j.at("channel"));
  if (j.contains("channel_file")) cfg.channel_file = j.at("channel_file").get<std::string>();
  if (j.contains("phy")) cfg.phy = parse_phy(j.at("phy"));
  if (j.contains("algorithms")) {
    cfg.algorithms.clear();
    for (const auto& a : j.at("algorithms")) {
      cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
  }
  if (j.contains("seeds") && j.contains("num_seeds")) {
    throw ConfigError("give either seeds or num_seeds, not both");
  }
  read(j, "seeds", cfg.seeds);
  if (j.contains("num_seeds")) {
    const auto n = j.at("num_seeds").get<std::uint64_t>();
    for (std::uint64_t s = 0; s < n; ++s) cfg.seeds.push_back(s);
  }
  read(j, "output", cfg.output_path);
  if (j.contains("sus")) {
    const json& s = j.at("sus");
    reject_unknown(s, {"alpha", "sweep"}, "sus");
    cfg.sus = SusParams{};
    read(s, "alpha", cfg.sus.alpha);
    read(s, "sweep", cfg.sus.sweep);
  }
  read(j, "exhaustive_cap", cfg.exhaustive_cap);
  read(j, "t_su", cfg.t_su);
  read(j, "record_runtime", cfg.record_runtime);
  read(j, "min_timing_seconds", cfg.min_timing_seconds);
  return cfg;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  ExperimentConfig cfg;
  try {
    cfg = parse_root(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

CorrelatedRicianSpec parse_channel_spec(std::string_view json_text) {
  CorrelatedRicianSpec spec;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ConfigError("channel spec must be a JSON object");
    reject_unknown(j,
                   {"num_users", "num_tx_antennas", "num_subcarriers",
                    "k_factor_db", "rho", "correlated_user_count", "seed"},
                   "channel spec");
    read(j, "num_users", spec.num_users);
    read(j, "num_tx_antennas", spec.num_tx_antennas);
    read(j, "num_subcarriers", spec.num_subcarriers);
    read(j, "k_factor_db", spec.k_factor_db);
    read(j, "rho", spec.rho);
    read(j, "correlated_user_count", spec.correlated_user_count);
    read(j, "seed", spec.seed);
    spec.validate();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid channel spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid channel spec: ") + e.what());
  }
  return spec;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str());
}

}  // namespace mugroup
