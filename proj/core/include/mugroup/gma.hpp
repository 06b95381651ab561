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

#ifndef MUGROUP_GMA_HPP_
#define MUGROUP_GMA_HPP_

#include <cstddef>
#include <vector>

#include "mugroup/grouping.hpp"
#include "mugroup/rate_oracle.hpp"

namespace mugroup {

// Exact optimum over partitions with groups of size <= 2. Pairs are matched
// on a general graph with edge weight 2 R({i,j}) - R({i}) - R({j}); the
// objective is sum_m R({m}) plus the matching weight, so a pair is only
// formed when it beats serving both users alone.
GroupingSolution optimal_mu2_su(const RateOracle& oracle, std::size_t num_users);

// (|g|+1) R(g + u) - |g| R(g) - R({u}). Throws std::invalid_argument if u is
// already in g.
double merge_gain(const Group& group, UserId user, const RateOracle& oracle);

// Working sets of one growth pass.
struct GmaPassState {
  std::vector<Group> current_groups;  // groups entering the pass
  std::vector<Group> s1;              // kept groups, candidates for growth
  std::vector<Group> s2;              // decomposed singletons
  std::vector<Group> committed;       // already final for this pass
  std::size_t pass_target_size = 0;
};

struct GmaMergeDecision {
  Group group;
  UserId user = 0;
  bool feasible = false;
  bool accepted = false;
  double gain = 0.0;
  double objective_after = 0.0;  // working partition after this decision
};

struct GmaPassRecord {
  GmaPassState state;             // after the split/rebalance, before matching
  double pre_merge_objective = 0.0;
  std::vector<GmaMergeDecision> decisions;
};

struct GmaTrace {
  GroupingSolution initial;       // the size-2 optimum from the first step
  std::vector<GmaPassRecord> passes;
};

// Graph matching algorithm for groups of up to max_group_size users:
//   1. optimal size-2 grouping via blossom matching;
//   2. for each target size 3..max_group_size: sort the groups by |g| R(g),
//      decompose the weakest ones into singletons until the singleton set is
//      at least as large as the kept set, rebalance, assign singletons to
//      kept groups with the Hungarian method on (|g|+1) R(g + u), and accept
//      each merge only on strictly positive merge_gain.
// Requires max_group_size >= 2. With max_group_size == 2 the result equals
// optimal_mu2_su.
GroupingSolution gma(const RateOracle& oracle, std::size_t num_users,
                     std::size_t max_group_size, GmaTrace* trace = nullptr);

}  // namespace mugroup

#endif  // MUGROUP_GMA_HPP_
