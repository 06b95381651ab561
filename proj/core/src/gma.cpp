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

#include "mugroup/gma.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mugroup/matching.hpp"

namespace mugroup {

namespace {

void check_users(const RateOracle& oracle, std::size_t num_users) {
  if (num_users == 0) throw std::invalid_argument("num_users must be >= 1");
  if (num_users != oracle.num_users()) {
    throw std::invalid_argument("num_users " + std::to_string(num_users) +
                                " does not match the oracle's " +
                                std::to_string(oracle.num_users()));
  }
}

double weighted_rate(const Group& g, const RateOracle& oracle) {
  return static_cast<double>(g.size()) * oracle.rate(g);
}

std::vector<Group> concat(const std::vector<Group>& a,
                          const std::vector<Group>& b,
                          const std::vector<Group>& c) {
  std::vector<Group> out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

GroupingSolution optimal_mu2_su(const RateOracle& oracle,
                                std::size_t num_users) {
  check_users(oracle, num_users);
  if (num_users == 1) return make_solution({Group::single(0)}, oracle);
  if (oracle.max_group_size() < 2) {
    throw std::invalid_argument("oracle must cover groups of size 2");
  }

  std::vector<double> single(num_users);
  for (UserId u = 0; u < num_users; ++u) single[u] = oracle.rate(Group::single(u));

  // A pair is worth matching only if serving it as MU_2 beats serving both
  // users alone; non-positive transformed weights are never matched.
  WeightedGraph graph(num_users);
  for (UserId i = 0; i < num_users; ++i) {
    for (UserId j = i + 1; j < num_users; ++j) {
      const double pair = oracle.rate(Group({i, j}));
      graph.add_edge(i, j, 2.0 * pair - single[i] - single[j]);
    }
  }
  const Matching matching = max_weight_matching(graph);

  std::vector<Group> groups;
  std::vector<bool> matched(num_users, false);
  for (const auto& [a, b] : matching.pairs) {
    groups.push_back(Group({a, b}));
    matched[a] = matched[b] = true;
  }
  for (UserId u = 0; u < num_users; ++u) {
    if (!matched[u]) groups.push_back(Group::single(u));
  }
  return make_solution(std::move(groups), oracle);
}

double merge_gain(const Group& group, UserId user, const RateOracle& oracle) {
  if (group.contains(user)) {
    throw std::invalid_argument("user " + std::to_string(user) +
                                " is already in group " + to_string(group));
  }
  const Group merged = group.with(user);
  return weighted_rate(merged, oracle) - weighted_rate(group, oracle) -
         oracle.rate(Group::single(user));
}

GroupingSolution gma(const RateOracle& oracle, std::size_t num_users,
                     std::size_t max_group_size, GmaTrace* trace) {
  check_users(oracle, num_users);
  if (max_group_size < 2) throw std::invalid_argument("max_group_size must be >= 2");
  if (max_group_size > oracle.max_group_size()) {
    throw std::invalid_argument("max_group_size exceeds the oracle's limit");
  }

  GroupingSolution initial = optimal_mu2_su(oracle, num_users);
  if (trace != nullptr) {
    trace->initial = initial;
    trace->passes.clear();
  }

  std::vector<Group> working = initial.groups;
  std::vector<Group> committed;

  double all_rates = 0.0;  // scale for the infeasible-cell sentinel
  for (UserId u = 0; u < num_users; ++u) all_rates += oracle.rate(Group::single(u));

  for (std::size_t target = 3; target <= max_group_size; ++target) {
    GmaPassState state;
    state.pass_target_size = target;
    state.current_groups = working;

    std::vector<Group> s1;
    for (const Group& g : working) {
      if (g.size() >= max_group_size) {
        committed.push_back(g);
      } else {
        s1.push_back(g);
      }
    }
    std::stable_sort(s1.begin(), s1.end(), [&](const Group& a, const Group& b) {
      const double ma = weighted_rate(a, oracle);
      const double mb = weighted_rate(b, oracle);
      if (ma != mb) return ma > mb;
      return a.least() < b.least();
    });

    std::vector<Group> s2;
    while (s1.size() > s2.size()) {
      for (UserId u : s1.back()) s2.push_back(Group::single(u));
      s1.pop_back();
    }
    auto by_single_rate = [&](const Group& a, const Group& b) {
      const double ra = oracle.rate(a);
      const double rb = oracle.rate(b);
      if (ra != rb) return ra > rb;
      return a.least() < b.least();
    };
    std::sort(s2.begin(), s2.end(), by_single_rate);

    // Hand the weakest singletons back until both sides match; an odd
    // surplus leaves one singleton that goes straight to the result.
    while (s1.size() < s2.size()) {
      Group last = s2.back();
      s2.pop_back();
      if (s1.size() + 1 > s2.size()) {
        committed.push_back(last);
      } else {
        s1.push_back(last);
      }
    }

    state.s1 = s1;
    state.s2 = s2;
    state.committed = committed;

    GmaPassRecord record;
    record.state = state;
    record.pre_merge_objective = objective(concat(committed, s1, s2), oracle);

    std::vector<Group> next;
    if (!s1.empty()) {
      const std::size_t rows = s1.size();
      const std::size_t cols = std::max(s1.size(), s2.size());
      WeightMatrix benefit(rows, cols, 0.0);
      std::vector<std::vector<bool>> feasible(rows, std::vector<bool>(cols, false));
      double total_feasible = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < s2.size(); ++c) {
          const Group& g = s1[r];
          if (g.size() + 1 > max_group_size) continue;
          const double value = weighted_rate(g.with(s2[c].least()), oracle);
          if (value <= 0.0) continue;
          feasible[r][c] = true;
          benefit(r, c) = value;
          total_feasible += value;
        }
      }
      const double sentinel = -(1.0 + all_rates + total_feasible);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < s2.size(); ++c) {
          if (!feasible[r][c]) benefit(r, c) = sentinel;
        }
      }
      const Assignment assignment = hungarian(benefit);

      // Groups are rebuilt decision by decision so each intermediate
      // partition can be scored.
      std::vector<Group> merged = s1;
      std::vector<Group> loose = s2;
      std::vector<bool> consumed(s2.size(), false);
      for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t c = assignment.row_to_col[r];
        if (c >= s2.size()) continue;
        GmaMergeDecision decision;
        decision.group = s1[r];
        decision.user = s2[c].least();
        decision.feasible = feasible[r][c];
        if (decision.feasible) {
          decision.gain = merge_gain(s1[r], decision.user, oracle);
          decision.accepted = decision.gain > 0.0;
        }
        if (decision.accepted) {
          merged[r] = s1[r].with(decision.user);
          consumed[c] = true;
        }
        if (trace != nullptr) {
          std::vector<Group> rest;
          for (std::size_t k = 0; k < s2.size(); ++k) {
            if (!consumed[k]) rest.push_back(s2[k]);
          }
          decision.objective_after = objective(concat(committed, merged, rest), oracle);
        }
        record.decisions.push_back(std::move(decision));
      }
      next = std::move(merged);
      for (std::size_t k = 0; k < s2.size(); ++k) {
        if (!consumed[k]) next.push_back(s2[k]);
      }
    } else {
      next = s2;
    }

    if (trace != nullptr) trace->passes.push_back(std::move(record));
    working = std::move(next);
  }

  working.insert(working.end(), committed.begin(), committed.end());
  return make_solution(std::move(working), oracle);
}

}  // namespace mugroup
