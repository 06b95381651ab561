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

#ifndef MUGROUP_MATCHING_HPP_
#define MUGROUP_MATCHING_HPP_

#include <cstddef>
#include <utility>
#include <vector>

namespace mugroup {

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
};

// Simple undirected graph with finite (possibly negative) edge weights.
struct WeightedGraph {
  std::size_t num_vertices = 0;
  std::vector<WeightedEdge> edges;

  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n) : num_vertices(n) {}

  void add_edge(std::size_t u, std::size_t v, double weight) {
    edges.push_back({u, v, weight});
  }

  // Throws std::invalid_argument on self loops, out-of-range endpoints,
  // parallel edges or non-finite weights.
  void validate() const;
};

struct Matching {
  // Each pair has first < second; pairs sorted ascending.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double total_weight = 0.0;
};

// Maximum-weight (not necessarily perfect) matching on a general graph using
// Edmonds' blossom algorithm with the primal-dual updates of Galil, O(n^3).
// Edges with weight <= 0 never improve a matching and are not forced in.
// Deterministic for a given edge order.
Matching max_weight_matching(const WeightedGraph& graph);

// Exhaustive reference solver for graphs of at most 12 vertices. Among equal
// optima the first matching found by the search wins (lowest vertex decides
// first: unmatched, then partners in ascending order). Throws CapacityError
// above the size guard.
Matching brute_force_matching(const WeightedGraph& graph);

inline constexpr std::size_t kBruteForceMatchingLimit = 12;

// Dense benefit matrix, row-major.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  WeightMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<std::size_t> row_to_col;  // injective
  double total_benefit = 0.0;           // summed in row order
};

// Maximum-benefit assignment of every row to a distinct column (rows <= cols).
// Among optimal assignments the lexicographically smallest row_to_col is
// returned. O(n^3) for the Kuhn-Munkres solve plus a tie-break pass over the
// tight edges of the optimal duals. Throws std::invalid_argument if
// rows > cols or an entry is non-finite.
Assignment hungarian(const WeightMatrix& benefit);

// Permutation brute force with the same tie-break; rows <= cols <= 9.
Assignment brute_force_assignment(const WeightMatrix& benefit);

}  // namespace mugroup

#endif  // MUGROUP_MATCHING_HPP_
