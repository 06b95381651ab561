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

// mugroup command-line front end: experiment runs, channel generation and
// partition counting.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mugroup/bench.hpp"
#include "mugroup/channel.hpp"
#include "mugroup/errors.hpp"
#include "mugroup/grouping.hpp"

namespace {

constexpr int kConfigExit = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mugroup::ConfigError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void print_relative_complexity(const std::vector<mugroup::ResultRow>& rows) {
  std::fprintf(stderr, "%-6s %-4s %-11s %12s %10s\n", "M", "Nu", "algorithm",
               "runtime_ms", "rel_dB");
  for (const auto& r : rows) {
    const std::string name(mugroup::algorithm_name(r.algorithm));
    if (r.skipped) {
      std::fprintf(stderr, "%-6zu %-4zu %-11s %12s %10s\n", r.num_users,
                   r.max_group_size, name.c_str(), "skipped", "-");
    } else {
      std::fprintf(stderr, "%-6zu %-4zu %-11s %12.4f %10.2f\n", r.num_users,
                   r.max_group_size, name.c_str(), r.runtime_ms,
                   r.relative_db.value_or(0.0));
    }
  }
}

int run(const std::string& config_path, const std::string& out_override) {
  mugroup::ExperimentConfig cfg = mugroup::load_experiment_config(config_path);
  if (!out_override.empty()) cfg.output_path = out_override;
  const auto rows = mugroup::run_experiment(cfg);
  if (cfg.scenario == mugroup::Scenario::kRuntimeSweep) print_relative_complexity(rows);
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    mugroup::write_csv(std::cout, rows);
  } else {
    std::ofstream out(cfg.output_path);
    if (!out) throw mugroup::ConfigError("cannot write " + cfg.output_path);
    mugroup::write_csv(out, rows);
  }
  return 0;
}

int gen_channels(const std::string& spec_path, const std::string& out_path) {
  const auto spec = mugroup::parse_channel_spec(read_file(spec_path));
  const auto channels = mugroup::generate_rician(spec);
  std::ofstream out(out_path);
  if (!out) throw mugroup::ConfigError("cannot write " + out_path);
  mugroup::write_channels(out, channels);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MU-MIMO user grouping experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write CSV");
  run_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  run_cmd->add_option("--out", out_override, "CSV path, overrides the config");

  std::string spec_path;
  std::string channel_out;
  auto* gen_cmd = app.add_subcommand("gen-channels", "Write a Rician channel file");
  gen_cmd->add_option("--spec", spec_path, "JSON channel spec")->required();
  gen_cmd->add_option("--out", channel_out, "output channel file")->required();

  std::size_t m = 0;
  std::size_t max_size = 0;
  auto* part_cmd = app.add_subcommand("partitions", "Count size-capped partitions");
  part_cmd->add_option("--m", m, "number of users")->required()->check(CLI::PositiveNumber);
  part_cmd->add_option("--max-size", max_size, "largest block")->required()->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(config_path, out_override);
    if (*gen_cmd) return gen_channels(spec_path, channel_out);
    if (*part_cmd) {
      std::cout << mugroup::count_partitions(m, max_size) << '\n';
      return 0;
    }
  } catch (const mugroup::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const mugroup::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
