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

#ifndef MUGROUP_RATE_ORACLE_HPP_
#define MUGROUP_RATE_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "mugroup/channel.hpp"
#include "mugroup/group.hpp"
#include "mugroup/phy.hpp"

namespace mugroup {

// Memoized group-rate function R(G) over non-empty groups of at most
// max_group_size users out of num_users (num_users <= 64).
//
// Values are computed on first query and never change afterwards. Queries are
// safe from several threads; concurrent identical queries return identical
// values.
class RateOracle {
 public:
  using RateFunction = std::function<double(const Group&)>;

  RateOracle(std::size_t num_users, std::size_t max_group_size,
             RateFunction compute);
  ~RateOracle();
  RateOracle(RateOracle&&) noexcept;
  RateOracle& operator=(RateOracle&&) noexcept;
  RateOracle(const RateOracle&) = delete;
  RateOracle& operator=(const RateOracle&) = delete;

  // Oracle backed by an explicit table; querying a group missing from the
  // table throws std::out_of_range.
  static RateOracle from_table(std::size_t num_users,
                               std::size_t max_group_size,
                               std::vector<std::pair<Group, double>> table);

  // Throws std::invalid_argument for an empty group, a member out of range or
  // a group larger than max_group_size; std::domain_error if the underlying
  // function produced a negative or non-finite rate.
  double rate(const Group& group) const;

  std::size_t num_users() const noexcept { return num_users_; }
  std::size_t max_group_size() const noexcept { return max_group_size_; }

  // Number of times the underlying function has been invoked.
  std::size_t evaluations() const noexcept;

 private:
  struct Cache;

  std::size_t num_users_;
  std::size_t max_group_size_;
  RateFunction compute_;
  std::unique_ptr<Cache> cache_;
};

// Oracle over group_rate(channels, G, cfg). Rank-deficient groups are given
// rate 0 instead of raising. Throws std::invalid_argument if max_group_size
// exceeds the antenna count.
RateOracle make_rate_oracle(std::shared_ptr<const ChannelSet> channels,
                            PhyConfig cfg, std::size_t max_group_size);
RateOracle make_rate_oracle(const ChannelSet& channels, const PhyConfig& cfg,
                            std::size_t max_group_size);

}  // namespace mugroup

#endif  // MUGROUP_RATE_ORACLE_HPP_
