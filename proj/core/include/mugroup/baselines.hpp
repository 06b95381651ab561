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

#ifndef MUGROUP_BASELINES_HPP_
#define MUGROUP_BASELINES_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mugroup/channel.hpp"
#include "mugroup/grouping.hpp"
#include "mugroup/rate_oracle.hpp"

namespace mugroup {

// Capacity-greedy selection, repeated until every user is grouped. Each group
// is seeded with the ungrouped user of highest singleton rate and grown by
// the candidate maximizing |g| R(g) while that strictly improves.
GroupingSolution zfs_grouping(const RateOracle& oracle, std::size_t num_users,
                              std::size_t max_size);

inline const std::vector<double> kDefaultSusSweep = {0.2, 0.3, 0.4, 0.5, 0.6};

struct SusParams {
  double alpha = 0.5;          // semi-orthogonality threshold, (0, 1)
  std::vector<double> sweep;   // when non-empty, alpha is ignored

  // Throws std::invalid_argument for alpha outside (0, 1).
  void validate() const;
};

struct SusOutcome {
  GroupingSolution solution;
  double alpha = 0.0;  // threshold of the returned solution
};

// Semi-orthogonal user selection, repeated until every user is grouped. Each
// group is seeded with the ungrouped user of largest channel norm; a
// candidate qualifies when its correlation with every selected user is at
// most alpha, and the qualified candidate with the largest component
// orthogonal to the selected channels joins. With a sweep, the best scoring
// threshold is kept (first one on ties).
SusOutcome sus_grouping_detailed(const ChannelSet& channels,
                                 const RateOracle& oracle,
                                 std::size_t num_users, std::size_t max_size,
                                 const SusParams& params);
GroupingSolution sus_grouping(const ChannelSet& channels,
                              const RateOracle& oracle, std::size_t num_users,
                              std::size_t max_size, const SusParams& params);

// Seeded shuffle chunked into groups of max_size (last group may be smaller).
// Needs an oracle only for scoring; see random_partition for the bare groups.
std::vector<Group> random_partition(std::size_t num_users, std::size_t max_size,
                                    std::uint64_t seed);
GroupingSolution random_grouping(const RateOracle& oracle,
                                 std::size_t num_users, std::size_t max_size,
                                 std::uint64_t seed);

}  // namespace mugroup

#endif  // MUGROUP_BASELINES_HPP_
