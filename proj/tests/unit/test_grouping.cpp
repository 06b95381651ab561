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

#include <random>
#include <set>
#include <sstream>

#include "mugroup/errors.hpp"
#include "mugroup/grouping.hpp"
#include "support.hpp"

namespace mugroup {
namespace {

using testing::fixture_o1;
using testing::fixture_o2;
using testing::random_table_oracle;

TEST(Group, MembersAreSortedAndDistinct) {
  const Group g{5, 0, 3};
  EXPECT_EQ(std::vector<UserId>(g.begin(), g.end()), (std::vector<UserId>{0, 3, 5}));
  EXPECT_EQ(g.least(), 0u);
  EXPECT_EQ(g, (Group{3, 5, 0}));
  EXPECT_EQ(to_string(g), "{0,3,5}");
  EXPECT_EQ(g.mask(), 0b101001u);
  EXPECT_THROW(Group({1, 1}), std::invalid_argument);
  EXPECT_THROW(g.with(3), std::invalid_argument);
  EXPECT_EQ(g.with(1), (Group{0, 1, 3, 5}));
  EXPECT_THROW(Group{64}.mask(), std::out_of_range);
}

TEST(ValidatePartition, AllSingletonsIsValid) {
  EXPECT_TRUE(validate_partition(std::vector<Group>{{0}, {1}, {2}}, 3, 1).ok());
}

TEST(ValidatePartition, ReportsDuplicatedUser) {
  const auto report = validate_partition(std::vector<Group>{{0, 1}, {1, 2}}, 3, 3);
  EXPECT_FALSE(report.ok());
  EXPECT_EQ(report.duplicated, std::vector<UserId>{1});
}

TEST(ValidatePartition, ReportsOversizeGroup) {
  const auto report =
      validate_partition(std::vector<Group>{{0, 1, 2, 3}, {4}, {5}}, 6, 3);
  EXPECT_FALSE(report.ok());
  EXPECT_EQ(report.oversize, std::vector<std::size_t>{0});
}

TEST(ValidatePartition, ReportsMissingAndOutOfRange) {
  const auto report = validate_partition(std::vector<Group>{{0}, {7}}, 3, 2);
  EXPECT_EQ(report.missing, (std::vector<UserId>{1, 2}));
  EXPECT_EQ(report.out_of_range, std::vector<UserId>{7});
  EXPECT_NE(report.describe().find("missing"), std::string::npos);
}

TEST(Objective, WeightsEachGroupBySize) {
  auto oracle = RateOracle::from_table(
      3, 2, {{Group{0}, 2.0}, {Group{1, 2}, 3.0}});
  EXPECT_DOUBLE_EQ(objective(std::vector<Group>{{0}, {1, 2}}, oracle), 8.0);
  EXPECT_DOUBLE_EQ(objective(std::vector<Group>{{0}, {1}, {2}}, fixture_o1()), 12.0);
  EXPECT_DOUBLE_EQ(objective(std::vector<Group>{{0, 1}, {2}}, fixture_o2()), 13.0);
}

TEST(Objective, RejectsInvalidPartition) {
  EXPECT_THROW(objective(std::vector<Group>{{0, 1}, {1, 2}}, fixture_o1()),
               std::invalid_argument);
}

TEST(Objective, InvariantUnderGroupReordering) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto oracle = random_table_oracle(7, 3, 100 + trial);
    auto groups = testing::random_valid_partition(rng, 7, 3);
    const double base = objective(groups, oracle);
    std::shuffle(groups.begin(), groups.end(), rng);
    EXPECT_NEAR(objective(groups, oracle), base, 1e-12 * base);
  }
}

// a(n) = a(n-1) + (n-1) a(n-2) [cap>=2] + C(n-1,2) a(n-3) [cap>=3]
//        + C(n-1,3) a(n-4) [cap>=4]
std::uint64_t recurrence(std::size_t n, std::size_t cap) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::uint64_t m = k - 1;
    a[k] = a[k - 1];
    if (cap >= 2 && k >= 2) a[k] += m * a[k - 2];
    if (cap >= 3 && k >= 3) a[k] += m * (m - 1) / 2 * a[k - 3];
    if (cap >= 4 && k >= 4) a[k] += m * (m - 1) * (m - 2) / 6 * a[k - 4];
  }
  return a[n];
}

std::uint64_t enumerate_count(std::size_t m, std::size_t cap) {
  PartitionEnumerator e(m, cap);
  std::uint64_t n = 0;
  while (e.next()) ++n;
  return n;
}

TEST(PartitionCount, KnownValues) {
  EXPECT_EQ(enumerate_count(3, 1), 1u);
  EXPECT_EQ(enumerate_count(4, 2), 10u);
  EXPECT_EQ(enumerate_count(6, 2), 76u);
  EXPECT_EQ(enumerate_count(6, 3), 166u);
  EXPECT_EQ(count_partitions(12, 3), 1680592u);
  EXPECT_EQ(count_partitions(13, 3), 9467680u);
}

TEST(PartitionCount, EnumerationMatchesRecurrence) {
  for (std::size_t cap = 1; cap <= 4; ++cap) {
    for (std::size_t m = 1; m <= 12; ++m) {
      if (cap == 4 && m > 10) continue;  // keeps the test quick
      EXPECT_EQ(count_partitions(m, cap), recurrence(m, cap)) << m << "," << cap;
      EXPECT_EQ(enumerate_count(m, cap), recurrence(m, cap)) << m << "," << cap;
    }
  }
}

TEST(PartitionEnumerator, DistinctValidAndLexicographic) {
  for (std::size_t cap = 1; cap <= 4; ++cap) {
    for (std::size_t m = 1; m <= 7; ++m) {
      PartitionEnumerator e(m, cap);
      std::set<std::vector<Group>> seen;
      std::vector<std::size_t> previous;
      while (e.next()) {
        const auto groups = e.groups();
        EXPECT_TRUE(validate_partition(groups, m, cap).ok());
        EXPECT_TRUE(seen.insert(groups).second);
        const std::vector<std::size_t> labels(e.labels().begin(), e.labels().end());
        if (!previous.empty()) EXPECT_LT(previous, labels);
        previous = labels;
        for (std::size_t i = 1; i < groups.size(); ++i) {
          EXPECT_LT(groups[i - 1].least(), groups[i].least());
        }
      }
    }
  }
}

TEST(PartitionEnumerator, RejectsZeroArguments) {
  EXPECT_THROW(PartitionEnumerator(0, 3), std::invalid_argument);
  EXPECT_THROW(PartitionEnumerator(3, 0), std::invalid_argument);
}

TEST(ExhaustiveSearch, FixtureOptima) {
  const auto o1 = exhaustive_search(fixture_o1(), 3, 2);
  EXPECT_EQ(o1.groups, (std::vector<Group>{{0}, {1}, {2}}));
  EXPECT_DOUBLE_EQ(o1.objective_value, 12.0);
  const auto o2 = exhaustive_search(fixture_o2(), 3, 2);
  EXPECT_EQ(o2.groups, (std::vector<Group>{{0, 1}, {2}}));
  EXPECT_DOUBLE_EQ(o2.objective_value, 13.0);
}

TEST(ExhaustiveSearch, SingleUser) {
  const auto oracle = RateOracle::from_table(1, 1, {{Group{0}, 2.5}});
  const auto s = exhaustive_search(oracle, 1, 1);
  EXPECT_EQ(s.groups, std::vector<Group>{{0}});
  EXPECT_DOUBLE_EQ(s.objective_value, 2.5);
}

TEST(ExhaustiveSearch, RefusesBeyondCap) {
  const auto oracle = random_table_oracle(8, 3, 1);
  EXPECT_THROW(exhaustive_search(oracle, 8, 3, {1000}), CapacityError);
}

TEST(ExhaustiveSearch, FirstOptimumInCanonicalOrderWins) {
  // Unit rates make every partition score 3; the first enumerated one is
  // {0,1,2}.
  auto oracle = RateOracle(3, 3, [](const Group&) { return 1.0; });
  const auto s = exhaustive_search(oracle, 3, 3);
  EXPECT_EQ(s.groups, (std::vector<Group>{{0, 1, 2}}));
}

TEST(ExhaustiveSearch, DominatesEveryPartition) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto oracle = random_table_oracle(7, 3, seed);
    const auto best = exhaustive_search(oracle, 7, 3);
    EXPECT_DOUBLE_EQ(best.objective_value, objective(best.groups, oracle));
    PartitionEnumerator e(7, 3);
    while (e.next()) {
      EXPECT_GE(best.objective_value, objective(e.groups(), oracle));
    }
  }
}

TEST(Hypergraph, EdgeCounts) {
  EXPECT_EQ(build_hypergraph(3, 2, fixture_o1()).hyperedges.size(), 6u);
  const auto big = random_table_oracle(12, 3, 9);
  EXPECT_EQ(build_hypergraph(12, 3, big).hyperedges.size(), 298u);
}

TEST(Hypergraph, WeightsComeFromOracle) {
  const auto oracle = fixture_o1();
  for (const auto& e : build_hypergraph(3, 3, oracle).hyperedges) {
    EXPECT_EQ(e.weight, oracle.rate(e.vertices));
  }
}

Hypergraph twelve_vertex_hypergraph() {
  // Ten hyperedges over twelve vertices with sizes one to three.
  const std::vector<Group> edges = {{0, 1},  {1, 2},     {2, 3, 5}, {4},
                                    {5, 6, 7}, {6},      {7, 8, 9}, {8, 9, 10},
                                    {10, 11},  {11}};
  Hypergraph h;
  h.num_vertices = 12;
  for (const auto& g : edges) h.hyperedges.push_back({g, 1.0});
  return h;
}

TEST(Hypergraph, TwelveVertexMatchings) {
  const auto h = twelve_vertex_hypergraph();
  const std::vector<std::size_t> complete = {0, 2, 3, 5, 6, 8};
  EXPECT_TRUE(is_complete_matching(h, complete));
  const std::vector<std::size_t> partial = {0, 2, 3};
  EXPECT_TRUE(is_matching(h, partial));
  EXPECT_FALSE(is_complete_matching(h, partial));
  const std::vector<std::size_t> overlapping = {0, 1};
  EXPECT_FALSE(is_matching(h, overlapping));
  EXPECT_FALSE(is_complete_matching(h, overlapping));
  const std::vector<std::size_t> bad = {42};
  EXPECT_THROW(is_complete_matching(h, bad), std::out_of_range);
}

TEST(Hypergraph, CompleteMatchingsArePartitions) {
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto oracle = random_table_oracle(m, 3, 50 + m);
    const auto h = build_hypergraph(m, 3, oracle);
    PartitionEnumerator e(m, 3);
    std::size_t count = 0;
    while (e.next()) {
      std::vector<std::size_t> selected;
      for (const Group& g : e.groups()) {
        for (std::size_t i = 0; i < h.hyperedges.size(); ++i) {
          if (h.hyperedges[i].vertices == g) selected.push_back(i);
        }
      }
      ASSERT_TRUE(is_complete_matching(h, selected));
      const double obj = objective(e.groups(), oracle);
      EXPECT_NEAR(matching_score(h, selected), obj, 1e-12 * obj);
      ++count;
    }
    // Conversely, every complete matching found by subset search is one of
    // the enumerated partitions.
    std::size_t complete = 0;
    const std::size_t n = h.hyperedges.size();
    if (n <= 20) {
      for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << n); ++pick) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i) {
          if (pick >> i & 1) s.push_back(i);
        }
        if (is_complete_matching(h, s)) ++complete;
      }
      EXPECT_EQ(complete, count);
    }
  }
}

}  // namespace
}  // namespace mugroup
