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

#include "mugroup/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "mugroup/errors.hpp"

namespace mugroup {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  return __builtin_mul_overflow(a, b, &r) ? kSaturated : r;
}

void sort_canonical(std::vector<Group>& groups) {
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    return a.least() < b.least();
  });
}

template <typename T>
void join(std::ostringstream& out, const std::vector<T>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i ? "," : "") << values[i];
  }
}

}  // namespace

std::string PartitionReport::describe() const {
  if (ok()) return "ok";
  std::ostringstream out;
  const char* sep = "";
  if (!duplicated.empty()) {
    out << "duplicated users: ";
    join(out, duplicated);
    sep = "; ";
  }
  if (!missing.empty()) {
    out << sep << "missing users: ";
    join(out, missing);
    sep = "; ";
  }
  if (!out_of_range.empty()) {
    out << sep << "users out of range: ";
    join(out, out_of_range);
    sep = "; ";
  }
  if (!oversize.empty()) {
    out << sep << "oversize groups at index: ";
    join(out, oversize);
    sep = "; ";
  }
  if (!empty.empty()) {
    out << sep << "empty groups at index: ";
    join(out, empty);
  }
  return out.str();
}

PartitionReport validate_partition(std::span<const Group> groups,
                                   std::size_t num_users,
                                   std::size_t max_size) {
  PartitionReport report;
  std::vector<std::size_t> seen(num_users, 0);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const Group& g = groups[k];
    if (g.empty()) report.empty.push_back(k);
    if (g.size() > max_size) report.oversize.push_back(k);
    for (UserId u : g) {
      if (u >= num_users) {
        report.out_of_range.push_back(u);
        continue;
      }
      if (++seen[u] == 2) report.duplicated.push_back(u);
    }
  }
  for (UserId u = 0; u < num_users; ++u) {
    if (seen[u] == 0) report.missing.push_back(u);
  }
  std::sort(report.duplicated.begin(), report.duplicated.end());
  std::sort(report.out_of_range.begin(), report.out_of_range.end());
  return report;
}

double objective(std::span<const Group> groups, const RateOracle& oracle) {
  const PartitionReport report =
      validate_partition(groups, oracle.num_users(), oracle.max_group_size());
  if (!report.ok()) {
    throw std::invalid_argument("not a valid partition: " + report.describe());
  }
  double total = 0.0;
  for (const Group& g : groups) {
    total += static_cast<double>(g.size()) * oracle.rate(g);
  }
  return total;
}

GroupingSolution make_solution(std::vector<Group> groups,
                               const RateOracle& oracle) {
  const PartitionReport report =
      validate_partition(groups, oracle.num_users(), oracle.max_group_size());
  if (!report.ok()) {
    throw std::invalid_argument("not a valid partition: " + report.describe());
  }
  sort_canonical(groups);
  GroupingSolution solution;
  solution.num_users = oracle.num_users();
  solution.objective_value = objective(groups, oracle);
  solution.groups = std::move(groups);
  return solution;
}

PartitionEnumerator::PartitionEnumerator(std::size_t num_users,
                                         std::size_t max_size)
    : num_users_(num_users),
      max_size_(max_size),
      labels_(num_users, 0),
      block_sizes_(num_users, 0) {
  if (num_users_ == 0) throw std::invalid_argument("num_users must be >= 1");
  if (max_size_ == 0) throw std::invalid_argument("max_size must be >= 1");
}

void PartitionEnumerator::fill_from(std::size_t position) {
  for (std::size_t i = position; i < num_users_; ++i) {
    std::size_t b = 0;
    while (b < num_blocks_ && block_sizes_[b] >= max_size_) ++b;
    if (b == num_blocks_) ++num_blocks_;
    labels_[i] = b;
    ++block_sizes_[b];
  }
}

bool PartitionEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    fill_from(0);
    return true;
  }
  for (std::size_t i = num_users_ - 1; i >= 1; --i) {
    const std::size_t b = labels_[i];
    if (--block_sizes_[b] == 0) --num_blocks_;  // b was the newest block
    for (std::size_t v = b + 1; v <= num_blocks_; ++v) {
      if (v == num_blocks_ || block_sizes_[v] < max_size_) {
        labels_[i] = v;
        if (v == num_blocks_) ++num_blocks_;
        ++block_sizes_[v];
        fill_from(i + 1);
        return true;
      }
    }
  }
  done_ = true;
  return false;
}

std::vector<Group> PartitionEnumerator::groups() const {
  std::vector<std::vector<UserId>> blocks(num_blocks_);
  for (std::size_t i = 0; i < num_users_; ++i) blocks[labels_[i]].push_back(i);
  std::vector<Group> out;
  out.reserve(blocks.size());
  for (auto& b : blocks) out.emplace_back(std::move(b));
  return out;
}

std::uint64_t count_partitions(std::size_t num_users, std::size_t max_size) {
  if (max_size == 0) return num_users == 0 ? 1 : 0;
  // Pascal's triangle rows up to num_users - 1.
  std::vector<std::vector<std::uint64_t>> binom(num_users + 1);
  for (std::size_t n = 0; n <= num_users; ++n) {
    binom[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) {
      binom[n][k] = sat_add(binom[n - 1][k - 1], binom[n - 1][k]);
    }
  }
  std::vector<std::uint64_t> a(num_users + 1, 0);
  a[0] = 1;
  for (std::size_t n = 1; n <= num_users; ++n) {
    std::uint64_t total = 0;
    for (std::size_t s = 1; s <= std::min(max_size, n); ++s) {
      total = sat_add(total, sat_mul(binom[n - 1][s - 1], a[n - s]));
    }
    a[n] = total;
  }
  return a[num_users];
}

GroupingSolution exhaustive_search(const RateOracle& oracle,
                                   std::size_t num_users, std::size_t max_size,
                                   const ExhaustiveOptions& options) {
  if (num_users != oracle.num_users()) {
    throw std::invalid_argument("exhaustive_search: num_users mismatch");
  }
  if (max_size > oracle.max_group_size()) {
    throw std::invalid_argument("exhaustive_search: max_size exceeds oracle");
  }
  const std::uint64_t count = count_partitions(num_users, max_size);
  if (count > options.max_partitions) {
    throw CapacityError(
        "exhaustive search over " + std::to_string(num_users) +
        " users with groups of at most " + std::to_string(max_size) +
        " needs " +
        (count == kSaturated ? std::string("more than 2^64")
                             : std::to_string(count)) +
        " partitions, above the cap of " +
        std::to_string(options.max_partitions) + "; use a heuristic (gma)");
  }

  // Local rate cache keyed by member mask; the oracle is only consulted on a
  // miss.
  constexpr std::size_t kDenseLimit = 20;
  std::vector<double> dense;
  std::unordered_map<std::uint64_t, double> sparse;
  if (num_users <= kDenseLimit) {
    dense.assign(std::size_t{1} << num_users,
                 std::numeric_limits<double>::quiet_NaN());
  }
  auto rate_of = [&](std::uint64_t mask) -> double {
    if (!dense.empty()) {
      double& slot = dense[mask];
      if (std::isnan(slot)) {
        std::vector<UserId> members;
        for (UserId u = 0; u < num_users; ++u) {
          if (mask >> u & 1u) members.push_back(u);
        }
        slot = oracle.rate(Group(std::move(members)));
      }
      return slot;
    }
    auto it = sparse.find(mask);
    if (it != sparse.end()) return it->second;
    std::vector<UserId> members;
    for (UserId u = 0; u < num_users; ++u) {
      if (mask >> u & 1u) members.push_back(u);
    }
    const double r = oracle.rate(Group(std::move(members)));
    sparse.emplace(mask, r);
    return r;
  };

  PartitionEnumerator partitions(num_users, max_size);
  std::vector<std::uint64_t> masks(num_users);
  std::vector<std::size_t> sizes(num_users);
  std::vector<std::size_t> best_labels;
  double best = -std::numeric_limits<double>::infinity();
  while (partitions.next()) {
    const auto labels = partitions.labels();
    const std::size_t blocks = partitions.num_blocks();
    std::fill_n(masks.begin(), blocks, 0);
    std::fill_n(sizes.begin(), blocks, 0);
    for (std::size_t i = 0; i < num_users; ++i) {
      masks[labels[i]] |= std::uint64_t{1} << i;
      ++sizes[labels[i]];
    }
    // Same summation order as objective() on canonical groups.
    double total = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      total += static_cast<double>(sizes[b]) * rate_of(masks[b]);
    }
    if (total > best) {
      best = total;
      best_labels.assign(labels.begin(), labels.end());
    }
  }

  std::size_t blocks = 0;
  for (std::size_t l : best_labels) blocks = std::max(blocks, l + 1);
  std::vector<std::vector<UserId>> members(blocks);
  for (std::size_t i = 0; i < num_users; ++i) {
    members[best_labels[i]].push_back(i);
  }
  std::vector<Group> groups;
  for (auto& m : members) groups.emplace_back(std::move(m));
  return make_solution(std::move(groups), oracle);
}

Hypergraph build_hypergraph(std::size_t num_users, std::size_t max_size,
                            const RateOracle& oracle) {
  Hypergraph graph;
  graph.num_vertices = num_users;
  std::vector<UserId> combo;
  const std::function<void(UserId, std::size_t)> extend =
      [&](UserId start, std::size_t remaining) {
        if (remaining == 0) {
          Group g(combo);
          const double w = oracle.rate(g);
          graph.hyperedges.push_back({std::move(g), w});
          return;
        }
        for (UserId u = start; u + remaining <= num_users; ++u) {
          combo.push_back(u);
          extend(u + 1, remaining - 1);
          combo.pop_back();
        }
      };
  for (std::size_t s = 1; s <= std::min(max_size, num_users); ++s) {
    extend(0, s);
  }
  return graph;
}

bool is_matching(const Hypergraph& graph,
                 std::span<const std::size_t> selected) {
  std::vector<bool> used(graph.num_vertices, false);
  for (std::size_t idx : selected) {
    if (idx >= graph.hyperedges.size()) {
      throw std::out_of_range("hyperedge index " + std::to_string(idx) +
                              " out of range");
    }
    for (UserId v : graph.hyperedges[idx].vertices) {
      if (v >= graph.num_vertices) {
        throw std::out_of_range("hyperedge vertex out of range");
      }
      if (used[v]) return false;
      used[v] = true;
    }
  }
  return true;
}

bool is_complete_matching(const Hypergraph& graph,
                          std::span<const std::size_t> selected) {
  if (!is_matching(graph, selected)) return false;
  std::size_t covered = 0;
  for (std::size_t idx : selected) covered += graph.hyperedges[idx].vertices.size();
  return covered == graph.num_vertices;
}

double matching_score(const Hypergraph& graph,
                      std::span<const std::size_t> selected) {
  double total = 0.0;
  for (std::size_t idx : selected) {
    const Hyperedge& e = graph.hyperedges.at(idx);
    total += static_cast<double>(e.vertices.size()) * e.weight;
  }
  return total;
}

}  // namespace mugroup
