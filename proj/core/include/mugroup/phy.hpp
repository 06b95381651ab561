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

#ifndef MUGROUP_PHY_HPP_
#define MUGROUP_PHY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mugroup/channel.hpp"
#include "mugroup/group.hpp"

namespace mugroup {

enum class RateMode { kShannonCapacity, kMcsMapped };

// One 802.11ac VHT modulation and coding scheme.
struct McsEntry {
  int index = 0;
  int modulation_bits = 1;  // coded bits per subcarrier symbol
  int code_rate_num = 1;
  int code_rate_den = 2;
  double min_snr_db = 0.0;  // inclusive threshold

  double bits_per_subcarrier() const {
    return static_cast<double>(modulation_bits) * code_rate_num /
           code_rate_den;
  }
};

// MCS 0-9 with thresholds {2, 5, 9, 11, 15, 18, 20, 25, 29, 31} dB.
std::vector<McsEntry> default_mcs_table();

// Throws ConfigError when the table is empty or not strictly increasing in
// both bits per subcarrier and threshold.
void validate_mcs_table(std::span<const McsEntry> table);

struct PhyConfig {
  double bandwidth_hz = 40e6;
  double noise_power = 0.01;  // watts
  double total_power = 1.0;   // watts, split equally over group members
  RateMode rate_mode = RateMode::kShannonCapacity;
  bool mac_overhead_enabled = false;
  std::vector<McsEntry> mcs_table = default_mcs_table();

  // Numerology for the MCS-mapped rate; defaults follow a 40 MHz VHT channel
  // with short guard interval.
  int data_subcarriers = 108;
  int symbol_duration_ns = 3600;  // 3.2 us core symbol + 0.4 us guard
  double msdu_bytes = 1508.0;
  double mpdu_bytes = 1556.0;
  double ampdu_duration_s = 2e-3;
  double sifs_s = 16e-6;

  // Throws ConfigError on non-positive bandwidth, noise or power.
  void validate() const;
};

// Zero-forcing beamformers for one group: columns[sc][k] is w for
// group.members()[k] on subcarrier sc, unit Euclidean norm, length N_t.
struct SteeringMatrix {
  Group group;
  std::vector<std::vector<std::vector<Complex>>> columns;
  bool per_subcarrier = true;

  const std::vector<Complex>& column(std::size_t subcarrier,
                                     std::size_t member) const {
    return columns.at(subcarrier).at(member);
  }
};

// W = H^H (H H^H)^-1 per subcarrier with unit-norm columns, H stacking h_m of
// the group members as rows. Throws std::invalid_argument if the group is
// empty, has a member out of range or is larger than N_t; SingularityError
// if H is rank deficient on any subcarrier.
SteeringMatrix zf_steering(const ChannelSet& channels, const Group& group);

// h * w without conjugation.
Complex beam_gain(std::span<const Complex> h, std::span<const Complex> w);

// Per-member SINR on each subcarrier: sinr[sc][k], equal power split.
std::vector<std::vector<double>> group_sinr(const ChannelSet& channels,
                                            const Group& group,
                                            const PhyConfig& cfg);

// Estimated group capacity
//   R(G) = B * sum_m log2(1 + P_m |h_m w_m|^2 / (N0 + sum_{i!=m} P_i |h_m w_i|^2))
// averaged over subcarriers, or the MCS-mapped PHY rate sum when
// cfg.rate_mode == kMcsMapped. Bits per second.
double group_rate(const ChannelSet& channels, const Group& group,
                  const PhyConfig& cfg);

// Highest entry whose threshold is <= sinr_db; nullopt below the first.
// Throws ConfigError on an empty table.
std::optional<McsEntry> map_sinr_to_mcs(double sinr_db,
                                        std::span<const McsEntry> table);

// data_subcarriers * bits / symbol_duration, optionally scaled by the
// MSDU/MPDU and A-MPDU/(A-MPDU + SIFS) efficiency. Bits per second.
double phy_rate(const McsEntry& entry, const PhyConfig& cfg);

// (MSDU/MPDU) * T_ampdu / (T_ampdu + T_sifs).
double mac_efficiency(const PhyConfig& cfg);

}  // namespace mugroup

#endif  // MUGROUP_PHY_HPP_
