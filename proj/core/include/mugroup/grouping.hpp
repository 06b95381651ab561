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

#ifndef MUGROUP_GROUPING_HPP_
#define MUGROUP_GROUPING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mugroup/group.hpp"
#include "mugroup/rate_oracle.hpp"

namespace mugroup {

// A complete partition of users {0..num_users-1} into groups. Groups are held
// in canonical order (ascending least member) and objective_value caches
// sum_k |G_k| * R(G_k) evaluated in that order.
struct GroupingSolution {
  std::vector<Group> groups;
  std::size_t num_users = 0;
  double objective_value = 0.0;
};

// Sorts the groups canonically and evaluates the objective. Throws
// std::invalid_argument if the groups are not a valid partition for the
// oracle.
GroupingSolution make_solution(std::vector<Group> groups,
                               const RateOracle& oracle);

struct PartitionReport {
  std::vector<UserId> duplicated;    // users appearing in more than one group
  std::vector<UserId> missing;       // users in no group
  std::vector<UserId> out_of_range;  // members >= num_users
  std::vector<std::size_t> oversize; // indices of groups larger than max_size
  std::vector<std::size_t> empty;    // indices of empty groups

  bool ok() const noexcept {
    return duplicated.empty() && missing.empty() && out_of_range.empty() &&
           oversize.empty() && empty.empty();
  }
  std::string describe() const;
};

PartitionReport validate_partition(std::span<const Group> groups,
                                   std::size_t num_users,
                                   std::size_t max_size);

// sum_k |G_k| * R(G_k), summed in the order given. Throws
// std::invalid_argument when `groups` is not a valid partition of the
// oracle's users.
double objective(std::span<const Group> groups, const RateOracle& oracle);

// Streams every set partition of {0..num_users-1} with blocks of at most
// max_size elements exactly once. Partitions are encoded as restricted growth
// strings (labels()[i] is the block of user i, blocks numbered by first
// appearance) and emitted in lexicographic order of that encoding.
class PartitionEnumerator {
 public:
  PartitionEnumerator(std::size_t num_users, std::size_t max_size);

  // Advances to the next partition; the first call yields the first one.
  // Returns false once the stream is exhausted.
  bool next();

  std::span<const std::size_t> labels() const noexcept { return labels_; }
  std::size_t num_blocks() const noexcept { return num_blocks_; }

  // Current partition as groups in canonical order.
  std::vector<Group> groups() const;

 private:
  void fill_from(std::size_t position);

  std::size_t num_users_;
  std::size_t max_size_;
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> block_sizes_;
  std::size_t num_blocks_ = 0;
  bool started_ = false;
  bool done_ = false;
};

// Number of partitions the enumerator emits:
//   a(n) = sum_{s=1..max_size} C(n-1, s-1) * a(n-s),  a(0) = 1,
// saturating at UINT64_MAX.
std::uint64_t count_partitions(std::size_t num_users, std::size_t max_size);

struct ExhaustiveOptions {
  std::uint64_t max_partitions = 10'000'000;
};

// Optimal partition by full enumeration; among equal objectives the first in
// enumeration order wins. Throws CapacityError when the partition count
// exceeds options.max_partitions.
GroupingSolution exhaustive_search(const RateOracle& oracle,
                                   std::size_t num_users, std::size_t max_size,
                                   const ExhaustiveOptions& options = {});

struct Hyperedge {
  Group vertices;
  double weight = 0.0;
};

struct Hypergraph {
  std::size_t num_vertices = 0;
  std::vector<Hyperedge> hyperedges;
};

// One hyperedge per non-empty user subset of size <= max_size, weighted by
// the oracle rate. Hyperedges are ordered by size, then lexicographically.
Hypergraph build_hypergraph(std::size_t num_users, std::size_t max_size,
                            const RateOracle& oracle);

// True iff the selected hyperedges are pairwise disjoint and cover every
// vertex. Throws std::out_of_range on an invalid hyperedge index.
bool is_complete_matching(const Hypergraph& graph,
                          std::span<const std::size_t> selected);

// True iff the selected hyperedges are pairwise disjoint.
bool is_matching(const Hypergraph& graph, std::span<const std::size_t> selected);

// sum over selected hyperedges of weight * |e|.
double matching_score(const Hypergraph& graph,
                      std::span<const std::size_t> selected);

}  // namespace mugroup

#endif  // MUGROUP_GROUPING_HPP_
