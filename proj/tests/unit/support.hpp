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

// Shared fixtures and random instance generators for the unit tests.

#ifndef MUGROUP_TESTS_SUPPORT_HPP_
#define MUGROUP_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "mugroup/channel.hpp"
#include "mugroup/grouping.hpp"
#include "mugroup/matching.hpp"
#include "mugroup/rate_oracle.hpp"

namespace mugroup::testing {

// Three users 0,1,2 with singleton rate 4; pair {0,1} is the only attractive
// pair in O2.
inline RateOracle fixture_o1(double pair01 = 3.5) {
  return RateOracle::from_table(
      3, 3,
      {{Group{0}, 4.0},
       {Group{1}, 4.0},
       {Group{2}, 4.0},
       {Group{0, 1}, pair01},
       {Group{0, 2}, 1.0},
       {Group{1, 2}, 1.0},
       {Group{0, 1, 2}, 0.8}});
}

inline RateOracle fixture_o2() { return fixture_o1(4.5); }

// Every non-empty subset up to max_size gets an independent rate drawn
// uniformly from [lo, hi).
inline RateOracle random_table_oracle(std::size_t m, std::size_t max_size,
                                      std::uint64_t seed, double lo = 0.0,
                                      double hi = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::map<std::uint64_t, double> table;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) <= max_size) {
      table[mask] = dist(rng);
    }
  }
  return RateOracle(m, max_size, [table](const Group& g) {
    return table.at(g.mask());
  });
}

inline ChannelSet rows_channel(
    std::size_t nt, const std::vector<std::vector<Complex>>& rows) {
  std::vector<Complex> entries;
  for (const auto& r : rows) entries.insert(entries.end(), r.begin(), r.end());
  return ChannelSet(rows.size(), nt, 1, std::move(entries));
}

inline ChannelSet rician(std::size_t m, std::uint64_t seed,
                         std::size_t correlated = 0, double rho = 0.0) {
  CorrelatedRicianSpec spec;
  spec.num_users = m;
  spec.seed = seed;
  spec.correlated_user_count = correlated;
  spec.rho = rho;
  return generate_rician(spec);
}

inline WeightedGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices,
                                  int lo, int hi) {
  std::uniform_int_distribution<std::size_t> nv(0, max_vertices);
  std::uniform_int_distribution<int> w(lo, hi);
  std::bernoulli_distribution keep(0.6);
  WeightedGraph g(nv(rng));
  for (std::size_t i = 0; i < g.num_vertices; ++i) {
    for (std::size_t j = i + 1; j < g.num_vertices; ++j) {
      if (keep(rng)) g.add_edge(i, j, w(rng));
    }
  }
  return g;
}

inline WeightMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                                  std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> w(lo, hi);
  WeightMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = w(rng);
  }
  return m;
}

// Uniformly shuffled users chunked into random block sizes <= max_size.
inline std::vector<Group> random_valid_partition(std::mt19937_64& rng,
                                                 std::size_t m,
                                                 std::size_t max_size) {
  std::vector<UserId> users(m);
  for (std::size_t i = 0; i < m; ++i) users[i] = i;
  std::shuffle(users.begin(), users.end(), rng);
  std::vector<Group> groups;
  std::size_t pos = 0;
  while (pos < m) {
    std::uniform_int_distribution<std::size_t> len(1, std::min(max_size, m - pos));
    const std::size_t n = len(rng);
    groups.emplace_back(std::vector<UserId>(users.begin() + static_cast<long>(pos),
                                            users.begin() + static_cast<long>(pos + n)));
    pos += n;
  }
  return groups;
}

}  // namespace mugroup::testing

#endif  // MUGROUP_TESTS_SUPPORT_HPP_
