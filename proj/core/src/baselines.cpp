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

#include "mugroup/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace mugroup {

namespace {

void check_common(const RateOracle& oracle, std::size_t num_users,
                  std::size_t max_size) {
  if (num_users == 0) throw std::invalid_argument("num_users must be >= 1");
  if (num_users != oracle.num_users()) {
    throw std::invalid_argument("num_users does not match the oracle");
  }
  if (max_size == 0) throw std::invalid_argument("max_size must be >= 1");
  if (max_size > oracle.max_group_size()) {
    throw std::invalid_argument("max_size exceeds the oracle's limit");
  }
}

double weighted_rate(const Group& g, const RateOracle& oracle) {
  return static_cast<double>(g.size()) * oracle.rate(g);
}

}  // namespace

GroupingSolution zfs_grouping(const RateOracle& oracle, std::size_t num_users,
                              std::size_t max_size) {
  check_common(oracle, num_users, max_size);
  std::vector<bool> grouped(num_users, false);
  std::vector<Group> groups;
  std::size_t remaining = num_users;

  while (remaining > 0) {
    UserId seed = num_users;
    double seed_rate = -1.0;
    for (UserId u = 0; u < num_users; ++u) {
      if (grouped[u]) continue;
      const double r = oracle.rate(Group::single(u));
      if (r > seed_rate) {
        seed_rate = r;
        seed = u;
      }
    }
    Group group = Group::single(seed);
    grouped[seed] = true;
    --remaining;
    double current = weighted_rate(group, oracle);

    while (group.size() < max_size && remaining > 0) {
      UserId best_user = num_users;
      double best_value = -1.0;
      for (UserId u = 0; u < num_users; ++u) {
        if (grouped[u]) continue;
        const double value = weighted_rate(group.with(u), oracle);
        if (value > best_value) {
          best_value = value;
          best_user = u;
        }
      }
      if (!(best_value > current)) break;
      group = group.with(best_user);
      grouped[best_user] = true;
      --remaining;
      current = best_value;
    }
    groups.push_back(std::move(group));
  }
  return make_solution(std::move(groups), oracle);
}

void SusParams::validate() const {
  auto check = [](double a) {
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("SUS alpha must lie in (0, 1), got " +
                                  std::to_string(a));
    }
  };
  check(alpha);
  for (double a : sweep) check(a);
}

namespace {

// Per-subcarrier orthonormal basis of the channels already in a group.
class OrthogonalBasis {
 public:
  explicit OrthogonalBasis(std::size_t num_subcarriers)
      : per_subcarrier_(num_subcarriers) {}

  // Squared norm of the component of h orthogonal to the basis, summed over
  // subcarriers.
  double residual_energy(const ChannelSet& ch, UserId user) const {
    double energy = 0.0;
    for (std::size_t s = 0; s < per_subcarrier_.size(); ++s) {
      energy += squared_norm(residual(ch.user_vector(user, s), s));
    }
    return energy;
  }

  void add(const ChannelSet& ch, UserId user) {
    for (std::size_t s = 0; s < per_subcarrier_.size(); ++s) {
      std::vector<Complex> r = residual(ch.user_vector(user, s), s);
      const double norm = std::sqrt(squared_norm(r));
      if (norm <= 1e-12) continue;
      for (Complex& x : r) x /= norm;
      per_subcarrier_[s].push_back(std::move(r));
    }
  }

 private:
  static double squared_norm(const std::vector<Complex>& v) {
    double sum = 0.0;
    for (const Complex& x : v) sum += std::norm(x);
    return sum;
  }

  std::vector<Complex> residual(std::vector<Complex> h, std::size_t s) const {
    for (const auto& b : per_subcarrier_[s]) {
      Complex proj{0.0, 0.0};
      for (std::size_t a = 0; a < h.size(); ++a) proj += std::conj(b[a]) * h[a];
      for (std::size_t a = 0; a < h.size(); ++a) h[a] -= proj * b[a];
    }
    return h;
  }

  std::vector<std::vector<std::vector<Complex>>> per_subcarrier_;
};

GroupingSolution sus_single(const ChannelSet& channels, const RateOracle& oracle,
                            std::size_t num_users, std::size_t max_size,
                            double alpha) {
  const std::size_t sc = channels.num_subcarriers();
  std::vector<double> energy(num_users, 0.0);
  for (UserId u = 0; u < num_users; ++u) {
    for (std::size_t s = 0; s < sc; ++s) {
      for (const Complex& x : channels.user_vector(u, s)) energy[u] += std::norm(x);
    }
  }
  // Correlations are symmetric and reused across groups.
  std::vector<double> corr(num_users * num_users, 0.0);
  for (UserId i = 0; i < num_users; ++i) {
    for (UserId j = i + 1; j < num_users; ++j) {
      const double c = pairwise_correlation(channels, i, j);
      corr[i * num_users + j] = corr[j * num_users + i] = c;
    }
  }

  std::vector<bool> grouped(num_users, false);
  std::size_t remaining = num_users;
  std::vector<Group> groups;
  while (remaining > 0) {
    UserId seed = num_users;
    for (UserId u = 0; u < num_users; ++u) {
      if (!grouped[u] && (seed == num_users || energy[u] > energy[seed])) seed = u;
    }
    Group group = Group::single(seed);
    grouped[seed] = true;
    --remaining;
    OrthogonalBasis basis(sc);
    basis.add(channels, seed);

    while (group.size() < max_size && remaining > 0) {
      UserId best = num_users;
      double best_energy = -1.0;
      for (UserId u = 0; u < num_users; ++u) {
        if (grouped[u]) continue;
        const bool qualified = std::all_of(
            group.begin(), group.end(),
            [&](UserId m) { return corr[u * num_users + m] <= alpha; });
        if (!qualified) continue;
        const double e = basis.residual_energy(channels, u);
        if (e > best_energy) {
          best_energy = e;
          best = u;
        }
      }
      if (best == num_users) break;
      group = group.with(best);
      grouped[best] = true;
      --remaining;
      basis.add(channels, best);
    }
    groups.push_back(std::move(group));
  }
  return make_solution(std::move(groups), oracle);
}

}  // namespace

SusOutcome sus_grouping_detailed(const ChannelSet& channels,
                                 const RateOracle& oracle,
                                 std::size_t num_users, std::size_t max_size,
                                 const SusParams& params) {
  check_common(oracle, num_users, max_size);
  params.validate();
  if (channels.num_users() < num_users) {
    throw std::invalid_argument("channel set has fewer users than requested");
  }
  const std::vector<double> alphas =
      params.sweep.empty() ? std::vector<double>{params.alpha} : params.sweep;
  SusOutcome best;
  bool have = false;
  for (double alpha : alphas) {
    GroupingSolution candidate =
        sus_single(channels, oracle, num_users, max_size, alpha);
    if (!have || candidate.objective_value > best.solution.objective_value) {
      best.solution = std::move(candidate);
      best.alpha = alpha;
      have = true;
    }
  }
  return best;
}

GroupingSolution sus_grouping(const ChannelSet& channels,
                              const RateOracle& oracle, std::size_t num_users,
                              std::size_t max_size, const SusParams& params) {
  return sus_grouping_detailed(channels, oracle, num_users, max_size, params)
      .solution;
}

std::vector<Group> random_partition(std::size_t num_users, std::size_t max_size,
                                    std::uint64_t seed) {
  if (num_users == 0) throw std::invalid_argument("num_users must be >= 1");
  if (max_size == 0) throw std::invalid_argument("max_size must be >= 1");
  std::vector<UserId> order(num_users);
  std::iota(order.begin(), order.end(), UserId{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Group> groups;
  for (std::size_t start = 0; start < num_users; start += max_size) {
    const std::size_t end = std::min(num_users, start + max_size);
    groups.emplace_back(std::vector<UserId>(order.begin() + static_cast<std::ptrdiff_t>(start),
                                            order.begin() + static_cast<std::ptrdiff_t>(end)));
  }
  return groups;
}

GroupingSolution random_grouping(const RateOracle& oracle,
                                 std::size_t num_users, std::size_t max_size,
                                 std::uint64_t seed) {
  check_common(oracle, num_users, max_size);
  return make_solution(random_partition(num_users, max_size, seed), oracle);
}

}  // namespace mugroup
