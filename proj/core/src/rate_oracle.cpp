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

#include "mugroup/rate_oracle.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "mugroup/errors.hpp"

namespace mugroup {

struct RateOracle::Cache {
  mutable std::shared_mutex mutex;
  std::unordered_map<std::uint64_t, double> rates;
  std::atomic<std::size_t> evaluations{0};
};

RateOracle::RateOracle(std::size_t num_users, std::size_t max_group_size,
                       RateFunction compute)
    : num_users_(num_users),
      max_group_size_(max_group_size),
      compute_(std::move(compute)),
      cache_(std::make_unique<Cache>()) {
  if (num_users_ == 0 || num_users_ > 64) {
    throw DimensionError("RateOracle supports 1..64 users, got " +
                         std::to_string(num_users_));
  }
  if (max_group_size_ == 0) {
    throw std::invalid_argument("max_group_size must be positive");
  }
  if (!compute_) throw std::invalid_argument("RateOracle needs a function");
}

RateOracle::~RateOracle() = default;
RateOracle::RateOracle(RateOracle&&) noexcept = default;
RateOracle& RateOracle::operator=(RateOracle&&) noexcept = default;

RateOracle RateOracle::from_table(std::size_t num_users,
                                  std::size_t max_group_size,
                                  std::vector<std::pair<Group, double>> table) {
  std::map<Group, double> lookup;
  for (auto& [group, value] : table) {
    if (!lookup.emplace(group, value).second) {
      throw std::invalid_argument("rate table lists " + to_string(group) +
                                  " twice");
    }
  }
  return RateOracle(num_users, max_group_size,
                    [lookup = std::move(lookup)](const Group& g) {
                      auto it = lookup.find(g);
                      if (it == lookup.end()) {
                        throw std::out_of_range("rate table has no entry for " +
                                                to_string(g));
                      }
                      return it->second;
                    });
}

double RateOracle::rate(const Group& group) const {
  if (group.empty()) throw std::invalid_argument("rate of an empty group");
  if (group.size() > max_group_size_) {
    throw std::invalid_argument("group " + to_string(group) +
                                " exceeds max group size " +
                                std::to_string(max_group_size_));
  }
  for (UserId u : group) {
    if (u >= num_users_) {
      throw std::invalid_argument("group member " + std::to_string(u) +
                                  " out of range");
    }
  }
  const std::uint64_t key = group.mask();
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->rates.find(key);
    if (it != cache_->rates.end()) return it->second;
  }
  const double value = compute_(group);
  cache_->evaluations.fetch_add(1, std::memory_order_relaxed);
  if (!std::isfinite(value) || value < 0.0) {
    throw std::domain_error("rate of " + to_string(group) +
                            " is negative or not finite");
  }
  std::unique_lock lock(cache_->mutex);
  // A concurrent caller may have stored the same value first; keep theirs.
  return cache_->rates.emplace(key, value).first->second;
}

std::size_t RateOracle::evaluations() const noexcept {
  return cache_->evaluations.load(std::memory_order_relaxed);
}

RateOracle make_rate_oracle(std::shared_ptr<const ChannelSet> channels,
                            PhyConfig cfg, std::size_t max_group_size) {
  if (!channels) throw std::invalid_argument("make_rate_oracle: null channels");
  if (max_group_size > channels->num_tx_antennas()) {
    throw std::invalid_argument(
        "max_group_size " + std::to_string(max_group_size) + " exceeds " +
        std::to_string(channels->num_tx_antennas()) + " transmit antennas");
  }
  cfg.validate();
  const std::size_t users = channels->num_users();
  return RateOracle(users, max_group_size,
                    [channels = std::move(channels),
                     cfg = std::move(cfg)](const Group& g) {
                      try {
                        return group_rate(*channels, g, cfg);
                      } catch (const SingularityError&) {
                        return 0.0;
                      }
                    });
}

RateOracle make_rate_oracle(const ChannelSet& channels, const PhyConfig& cfg,
                            std::size_t max_group_size) {
  return make_rate_oracle(std::make_shared<const ChannelSet>(channels), cfg,
                          max_group_size);
}

}  // namespace mugroup
