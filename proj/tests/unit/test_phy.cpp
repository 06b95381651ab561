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

#include <cmath>
#include <memory>
#include <random>
#include <thread>

#include "mugroup/errors.hpp"
#include "mugroup/phy.hpp"
#include "mugroup/rate_oracle.hpp"
#include "support.hpp"

namespace mugroup {
namespace {

using testing::rows_channel;

PhyConfig unit_config(double power, double noise) {
  PhyConfig cfg;
  cfg.bandwidth_hz = 1.0;
  cfg.total_power = power;
  cfg.noise_power = noise;
  return cfg;
}

TEST(ZfSteering, IdentityChannel) {
  const auto ch = rows_channel(2, {{1, 0}, {0, 1}});
  const auto w = zf_steering(ch, Group{0, 1});
  EXPECT_NEAR(std::abs(w.column(0, 0)[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w.column(0, 0)[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w.column(0, 1)[1] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(beam_gain(ch.user_vector(0, 0), w.column(0, 0)) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(beam_gain(ch.user_vector(0, 0), w.column(0, 1))), 0.0, 1e-15);
}

TEST(ZfSteering, SingleUserMatchedFilter) {
  const auto ch = rows_channel(2, {{3, 4}});
  const auto w = zf_steering(ch, Group{0});
  EXPECT_NEAR(std::abs(w.column(0, 0)[0] - 0.6), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w.column(0, 0)[1] - 0.8), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(beam_gain(ch.user_vector(0, 0), w.column(0, 0))), 5.0, 1e-14);
}

TEST(ZfSteering, NonOrthogonalPairNullsCrossTerms) {
  const double a = 1.0 / std::sqrt(2.0);
  const auto ch = rows_channel(2, {{1, 0}, {a, a}});
  const auto w = zf_steering(ch, Group{0, 1});
  EXPECT_LT(std::abs(beam_gain(ch.user_vector(0, 0), w.column(0, 1))), 1e-12);
  EXPECT_LT(std::abs(beam_gain(ch.user_vector(1, 0), w.column(0, 0))), 1e-12);
}

TEST(ZfSteering, Errors) {
  const auto ch = rows_channel(2, {{1, 2}, {1, 2}, {0, 1}});
  EXPECT_THROW(zf_steering(ch, Group{0, 1}), SingularityError);
  EXPECT_THROW(zf_steering(ch, Group{0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(zf_steering(ch, Group{}), std::invalid_argument);
  EXPECT_THROW(zf_steering(ch, Group{5}), std::invalid_argument);
}

TEST(ZfSteering, UnitNormAndOrthogonalOnRandomGroups) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CorrelatedRicianSpec spec;
    spec.num_users = 6;
    spec.num_subcarriers = 2;
    spec.seed = seed;
    const auto ch = generate_rician(spec);
    const auto groups = testing::random_valid_partition(rng, 6, 4);
    for (const Group& g : groups) {
      const auto w = zf_steering(ch, g);
      const auto members = g.members();
      for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t k = 0; k < members.size(); ++k) {
          double norm = 0.0;
          for (const auto& x : w.column(s, k)) norm += std::norm(x);
          EXPECT_NEAR(norm, 1.0, 1e-12);
          const auto h = ch.user_vector(members[k], s);
          double hn = 0.0;
          for (const auto& x : h) hn += std::norm(x);
          for (std::size_t i = 0; i < members.size(); ++i) {
            if (i == k) continue;
            EXPECT_LE(std::abs(beam_gain(h, w.column(s, i))), 1e-9 * std::sqrt(hn));
          }
        }
      }
    }
  }
}

TEST(GroupRate, SingleUserOneBit) {
  const auto ch = rows_channel(2, {{1, 0}});
  EXPECT_NEAR(group_rate(ch, Group{0}, unit_config(1.0, 1.0)), 1.0, 1e-12);
}

TEST(GroupRate, OrthogonalUsersNoInterference) {
  const auto ch = rows_channel(2, {{1, 0}, {0, 1}});
  EXPECT_NEAR(group_rate(ch, Group{0, 1}, unit_config(6.0, 1.0)), 4.0, 1e-12);
}

TEST(GroupRate, NonOrthogonalPairMatchesHandDerivation) {
  // Channel inverse [[1,0],[-1,sqrt2]]; normalized columns give |h_m w_m|^2
  // = 1/2 for both users, each with power 1.
  const double a = 1.0 / std::sqrt(2.0);
  const auto ch = rows_channel(2, {{1, 0}, {a, a}});
  const double expected = 2.0 * std::log2(1.0 + 0.5);
  EXPECT_NEAR(group_rate(ch, Group{0, 1}, unit_config(2.0, 1.0)), expected, 1e-9);
  const auto sinr = group_sinr(ch, Group{0, 1}, unit_config(2.0, 1.0));
  EXPECT_NEAR(sinr[0][0], 0.5, 1e-12);
  EXPECT_NEAR(sinr[0][1], 0.5, 1e-12);
}

TEST(GroupRate, BandwidthAppliedOnceAcrossSubcarriers) {
  // Two tones with SNR 1 and 3: mean of log2(2) and log2(4).
  const ChannelSet ch(1, 1, 2, {Complex{1, 0}, Complex{std::sqrt(3.0), 0}});
  PhyConfig cfg = unit_config(1.0, 1.0);
  cfg.bandwidth_hz = 10.0;
  EXPECT_NEAR(group_rate(ch, Group{0}, cfg), 10.0 * 1.5, 1e-12);
}

TEST(GroupRate, MonotoneInSnr) {
  const auto ch = testing::rician(1, 4);
  double previous = -1.0;
  for (double power = 0.1; power < 100.0; power *= 2.0) {
    const double r = group_rate(ch, Group{0}, unit_config(power, 0.01));
    EXPECT_GT(r, previous);
    previous = r;
  }
}

TEST(GroupRate, InvariantUnderUserRelabelling) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto ch = testing::rician(3, seed);
    // Reverse user order.
    std::vector<std::vector<Complex>> rows;
    for (std::size_t u = 3; u-- > 0;) rows.push_back(ch.user_vector(u, 0));
    const auto reversed = rows_channel(4, rows);
    const PhyConfig cfg;
    const double a = group_rate(ch, Group{0, 1, 2}, cfg);
    const double b = group_rate(reversed, Group{0, 1, 2}, cfg);
    EXPECT_NEAR(a, b, 1e-12 * a);
    const double c = group_rate(ch, Group{0, 2}, cfg);
    const double d = group_rate(reversed, Group{0, 2}, cfg);
    EXPECT_NEAR(c, d, 1e-12 * c);
  }
}

TEST(GroupRate, CommonScalingScalesSingletonSinr) {
  const auto ch = testing::rician(2, 8);
  const Complex c{0.3, -1.2};
  std::vector<Complex> scaled(ch.entries().begin(), ch.entries().end());
  for (auto& x : scaled) x *= c;
  const ChannelSet scaled_ch(2, 4, 1, scaled);
  const PhyConfig cfg;
  for (UserId u = 0; u < 2; ++u) {
    const double base = group_sinr(ch, Group::single(u), cfg)[0][0];
    const double after = group_sinr(scaled_ch, Group::single(u), cfg)[0][0];
    EXPECT_NEAR(after, std::norm(c) * base, 1e-9 * after);
  }
}

TEST(Mcs, DefaultTableAndMapping) {
  const auto table = default_mcs_table();
  ASSERT_EQ(table.size(), 10u);
  EXPECT_NO_THROW(validate_mcs_table(table));
  EXPECT_FALSE(map_sinr_to_mcs(1.99, table).has_value());
  EXPECT_EQ(map_sinr_to_mcs(9.0, table)->index, 2);
  EXPECT_EQ(map_sinr_to_mcs(8.999, table)->index, 1);
  EXPECT_EQ(map_sinr_to_mcs(45.0, table)->index, 9);
  EXPECT_THROW(map_sinr_to_mcs(10.0, std::span<const McsEntry>{}), ConfigError);
  auto bad = table;
  std::swap(bad[3], bad[4]);
  EXPECT_THROW(validate_mcs_table(bad), ConfigError);
}

TEST(Mcs, PhyRatesFromNumerology) {
  const auto table = default_mcs_table();
  const PhyConfig cfg;
  EXPECT_EQ(phy_rate(table[0], cfg), 15e6);
  EXPECT_EQ(phy_rate(table[7], cfg), 150e6);
  EXPECT_EQ(phy_rate(table[9], cfg), 200e6);
  PhyConfig mac = cfg;
  mac.mac_overhead_enabled = true;
  const double eff = (1508.0 / 1556.0) * (2e-3 / 2.016e-3);
  EXPECT_NEAR(mac_efficiency(cfg), eff, 1e-15);
  EXPECT_NEAR(phy_rate(table[7], mac), 150e6 * eff, 1e-6);
}

TEST(Mcs, GroupRateSumsMappedRates) {
  const auto ch = rows_channel(2, {{1, 0}, {0, 1}});
  PhyConfig cfg = unit_config(6.0, 1.0);  // per-user SNR 3 = 4.77 dB -> MCS 0
  cfg.rate_mode = RateMode::kMcsMapped;
  EXPECT_EQ(group_rate(ch, Group{0, 1}, cfg), 30e6);
  cfg.total_power = 0.2;  // below every threshold
  EXPECT_EQ(group_rate(ch, Group{0, 1}, cfg), 0.0);
}

TEST(PhyConfig, Validation) {
  PhyConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.noise_power = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.bandwidth_hz = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.total_power = NAN;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(RateOracle, MemoizesQueries) {
  const auto ch = rows_channel(2, {{1, 0}, {0, 1}});
  const auto oracle = make_rate_oracle(ch, unit_config(6.0, 1.0), 2);
  const double first = oracle.rate(Group{0, 1});
  EXPECT_EQ(oracle.evaluations(), 1u);
  EXPECT_EQ(oracle.rate(Group{0, 1}), first);
  EXPECT_EQ(oracle.evaluations(), 1u);
  EXPECT_NEAR(first, 4.0, 1e-12);
  EXPECT_NEAR(oracle.rate(Group{0}), std::log2(1.0 + 6.0), 1e-12);
  EXPECT_EQ(oracle.evaluations(), 2u);
}

TEST(RateOracle, RankDeficientGroupRatesZero) {
  const auto ch = rows_channel(2, {{1, 2}, {1, 2}});
  const auto oracle = make_rate_oracle(ch, PhyConfig{}, 2);
  EXPECT_EQ(oracle.rate(Group{0, 1}), 0.0);
  EXPECT_GT(oracle.rate(Group{0}), 0.0);
}

TEST(RateOracle, ArgumentChecks) {
  const auto ch = rows_channel(2, {{1, 0}, {0, 1}});
  EXPECT_THROW(make_rate_oracle(ch, PhyConfig{}, 3), std::invalid_argument);
  const auto oracle = make_rate_oracle(ch, PhyConfig{}, 1);
  EXPECT_THROW(oracle.rate(Group{}), std::invalid_argument);
  EXPECT_THROW(oracle.rate(Group{0, 1}), std::invalid_argument);
  EXPECT_THROW(oracle.rate(Group{2}), std::invalid_argument);
  const auto table = RateOracle::from_table(2, 2, {{Group{0}, 1.0}});
  EXPECT_THROW(table.rate(Group{1}), std::out_of_range);
  const RateOracle negative(1, 1, [](const Group&) { return -1.0; });
  EXPECT_THROW(negative.rate(Group{0}), std::domain_error);
  EXPECT_THROW(RateOracle(65, 1, [](const Group&) { return 1.0; }), std::invalid_argument);
}

TEST(RateOracle, ConcurrentQueriesAgree) {
  auto channels = std::make_shared<const ChannelSet>(testing::rician(10, 21));
  const auto oracle = make_rate_oracle(channels, PhyConfig{}, 3);
  std::vector<std::vector<double>> seen(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (UserId i = 0; i < 10; ++i) {
        for (UserId j = i + 1; j < 10; ++j) seen[t].push_back(oracle.rate(Group{i, j}));
      }
    });
  }
  for (auto& th : threads) th.join();
  for (std::size_t t = 1; t < 4; ++t) EXPECT_EQ(seen[t], seen[0]);
  for (UserId i = 0; i < 10; ++i) {
    for (UserId j = i + 1; j < 10; ++j) {
      EXPECT_EQ(oracle.rate(Group{i, j}), group_rate(*channels, Group{i, j}, PhyConfig{}));
    }
  }
}

}  // namespace
}  // namespace mugroup
