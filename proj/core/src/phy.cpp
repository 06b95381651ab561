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

#include "mugroup/phy.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "mugroup/errors.hpp"

namespace mugroup {

namespace {

// Relative singular-value floor below which the stacked channel is treated
// as rank deficient.
constexpr double kRankTolerance = 1e-10;

using MatrixC = Eigen::MatrixXcd;

MatrixC stacked_channel(const ChannelSet& channels, const Group& group,
                        std::size_t subcarrier) {
  MatrixC h(static_cast<Eigen::Index>(group.size()),
            static_cast<Eigen::Index>(channels.num_tx_antennas()));
  Eigen::Index row = 0;
  for (UserId u : group) {
    for (std::size_t a = 0; a < channels.num_tx_antennas(); ++a) {
      h(row, static_cast<Eigen::Index>(a)) = channels.at(u, a, subcarrier);
    }
    ++row;
  }
  return h;
}

void check_group(const ChannelSet& channels, const Group& group) {
  if (group.empty()) {
    throw std::invalid_argument("zero forcing needs a non-empty group");
  }
  if (group.size() > channels.num_tx_antennas()) {
    throw std::invalid_argument("group " + to_string(group) + " exceeds " +
                                std::to_string(channels.num_tx_antennas()) +
                                " transmit antennas");
  }
  for (UserId u : group) {
    if (u >= channels.num_users()) {
      throw std::invalid_argument("group member " + std::to_string(u) +
                                  " out of range");
    }
  }
}

}  // namespace

std::vector<McsEntry> default_mcs_table() {
  return {
      {0, 1, 1, 2, 2.0},  {1, 2, 1, 2, 5.0},  {2, 2, 3, 4, 9.0},
      {3, 4, 1, 2, 11.0}, {4, 4, 3, 4, 15.0}, {5, 6, 2, 3, 18.0},
      {6, 6, 3, 4, 20.0}, {7, 6, 5, 6, 25.0}, {8, 8, 3, 4, 29.0},
      {9, 8, 5, 6, 31.0},
  };
}

void validate_mcs_table(std::span<const McsEntry> table) {
  if (table.empty()) throw ConfigError("MCS table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const McsEntry& e = table[i];
    if (e.modulation_bits <= 0 || e.code_rate_num <= 0 ||
        e.code_rate_den <= 0 || e.code_rate_num > e.code_rate_den ||
        !std::isfinite(e.min_snr_db)) {
      throw ConfigError("MCS entry " + std::to_string(e.index) +
                        " is malformed");
    }
    if (i > 0 && (e.bits_per_subcarrier() <= table[i - 1].bits_per_subcarrier() ||
                  e.min_snr_db <= table[i - 1].min_snr_db)) {
      throw ConfigError("MCS table must be strictly increasing (entry " +
                        std::to_string(e.index) + ")");
    }
  }
}

void PhyConfig::validate() const {
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
    throw ConfigError("bandwidth_hz must be positive");
  }
  if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
    throw ConfigError("noise_power must be positive");
  }
  if (!(total_power > 0.0) || !std::isfinite(total_power)) {
    throw ConfigError("total_power must be positive");
  }
  if (data_subcarriers <= 0 || symbol_duration_ns <= 0) {
    throw ConfigError("OFDM numerology must be positive");
  }
  if (rate_mode == RateMode::kMcsMapped) validate_mcs_table(mcs_table);
}

Complex beam_gain(std::span<const Complex> h, std::span<const Complex> w) {
  Complex sum{};
  for (std::size_t a = 0; a < h.size(); ++a) sum += h[a] * w[a];
  return sum;
}

SteeringMatrix zf_steering(const ChannelSet& channels, const Group& group) {
  check_group(channels, group);
  const auto g = static_cast<Eigen::Index>(group.size());
  const auto nt = static_cast<Eigen::Index>(channels.num_tx_antennas());

  SteeringMatrix out;
  out.group = group;
  out.per_subcarrier = true;
  out.columns.resize(channels.num_subcarriers());
  for (std::size_t s = 0; s < channels.num_subcarriers(); ++s) {
    const MatrixC h = stacked_channel(channels, group, s);
    const Eigen::JacobiSVD<MatrixC> svd(h);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0.0) || sv(g - 1) <= kRankTolerance * sv(0)) {
      throw SingularityError("channel of group " + to_string(group) +
                             " is rank deficient on subcarrier " +
                             std::to_string(s));
    }
    const MatrixC gram = h * h.adjoint();
    const MatrixC w = h.adjoint() * gram.partialPivLu().inverse();

    auto& cols = out.columns[s];
    cols.resize(group.size());
    for (Eigen::Index k = 0; k < g; ++k) {
      const double norm = w.col(k).norm();
      cols[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(nt));
      for (Eigen::Index a = 0; a < nt; ++a) {
        cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] =
            w(a, k) / norm;
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> group_sinr(const ChannelSet& channels,
                                            const Group& group,
                                            const PhyConfig& cfg) {
  const SteeringMatrix steering = zf_steering(channels, group);
  const double per_user_power =
      cfg.total_power / static_cast<double>(group.size());
  const auto members = group.members();

  std::vector<std::vector<double>> sinr(channels.num_subcarriers(),
                                        std::vector<double>(group.size()));
  for (std::size_t s = 0; s < channels.num_subcarriers(); ++s) {
    for (std::size_t m = 0; m < members.size(); ++m) {
      const std::vector<Complex> h = channels.user_vector(members[m], s);
      double signal = 0.0;
      double interference = 0.0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        const double gain = std::norm(beam_gain(h, steering.column(s, i)));
        if (i == m) {
          signal = per_user_power * gain;
        } else {
          interference += per_user_power * gain;
        }
      }
      sinr[s][m] = signal / (cfg.noise_power + interference);
    }
  }
  return sinr;
}

double group_rate(const ChannelSet& channels, const Group& group,
                  const PhyConfig& cfg) {
  const auto sinr = group_sinr(channels, group, cfg);
  double total = 0.0;
  for (const auto& per_member : sinr) {
    for (double x : per_member) {
      if (cfg.rate_mode == RateMode::kShannonCapacity) {
        total += std::log2(1.0 + x);
      } else {
        const double db = x > 0.0 ? 10.0 * std::log10(x) : -HUGE_VAL;
        if (auto entry = map_sinr_to_mcs(db, cfg.mcs_table)) {
          total += phy_rate(*entry, cfg);
        }
      }
    }
  }
  total /= static_cast<double>(sinr.size());
  return cfg.rate_mode == RateMode::kShannonCapacity ? cfg.bandwidth_hz * total
                                                     : total;
}

std::optional<McsEntry> map_sinr_to_mcs(double sinr_db,
                                        std::span<const McsEntry> table) {
  if (table.empty()) throw ConfigError("MCS table is empty");
  std::optional<McsEntry> best;
  for (const McsEntry& e : table) {
    if (e.min_snr_db <= sinr_db) best = e;
  }
  return best;
}

double mac_efficiency(const PhyConfig& cfg) {
  return (cfg.msdu_bytes / cfg.mpdu_bytes) *
         (cfg.ampdu_duration_s / (cfg.ampdu_duration_s + cfg.sifs_s));
}

double phy_rate(const McsEntry& entry, const PhyConfig& cfg) {
  // Integer-valued numerator and denominator keep standard rates exact.
  const double numerator = static_cast<double>(cfg.data_subcarriers) *
                           entry.modulation_bits * entry.code_rate_num * 1e9;
  const double denominator =
      static_cast<double>(entry.code_rate_den) * cfg.symbol_duration_ns;
  double rate = numerator / denominator;
  if (cfg.mac_overhead_enabled) rate *= mac_efficiency(cfg);
  return rate;
}

}  // namespace mugroup
