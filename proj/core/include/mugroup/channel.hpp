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

#ifndef MUGROUP_CHANNEL_HPP_
#define MUGROUP_CHANNEL_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace mugroup {

using Complex = std::complex<double>;

// Downlink channel gains h[user][tx_antenna][subcarrier]. Entries are stored
// densely with the subcarrier index varying fastest, then antenna, then user,
// which is also the record order of the interchange format.
class ChannelSet {
 public:
  // Throws DimensionError on a zero dimension or a payload of the wrong size,
  // std::invalid_argument on a non-finite entry.
  ChannelSet(std::size_t num_users, std::size_t num_tx_antennas,
             std::size_t num_subcarriers, std::vector<Complex> entries);

  // All-zero channel of the given shape.
  static ChannelSet zeros(std::size_t num_users, std::size_t num_tx_antennas,
                          std::size_t num_subcarriers);

  std::size_t num_users() const noexcept { return num_users_; }
  std::size_t num_tx_antennas() const noexcept { return num_tx_antennas_; }
  std::size_t num_subcarriers() const noexcept { return num_subcarriers_; }

  Complex at(std::size_t user, std::size_t antenna,
             std::size_t subcarrier) const;

  // h_user on one subcarrier, one value per transmit antenna.
  std::vector<Complex> user_vector(std::size_t user,
                                   std::size_t subcarrier) const;

  std::span<const Complex> entries() const noexcept { return entries_; }

  // Copy restricted to users [0, count).
  ChannelSet first_users(std::size_t count) const;

  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

 private:
  std::size_t index(std::size_t user, std::size_t antenna,
                    std::size_t subcarrier) const noexcept {
    return (user * num_tx_antennas_ + antenna) * num_subcarriers_ + subcarrier;
  }

  std::size_t num_users_;
  std::size_t num_tx_antennas_;
  std::size_t num_subcarriers_;
  std::vector<Complex> entries_;
};

// Correlated Rician fading. The first `correlated_user_count` users share a
// common scattered component with weight sqrt(rho).
struct CorrelatedRicianSpec {
  std::size_t num_users = 12;
  std::size_t num_tx_antennas = 4;
  std::size_t num_subcarriers = 1;
  double k_factor_db = 8.0;
  double rho = 0.0;
  std::size_t correlated_user_count = 0;
  std::uint64_t seed = 0;

  // Throws DimensionError / std::invalid_argument when these parameters are unusable.
  void validate() const;
  double k_linear() const;
};

// One realization split into its scaled line-of-sight and scattered parts;
// `channels` is their sum.
struct RicianRealization {
  ChannelSet channels;
  ChannelSet los;
  ChannelSet nlos;
};

// h_m = sqrt(K/(K+1)) a(theta_m) + sqrt(1/(K+1)) n_m where a() is a
// half-wavelength ULA steering vector and n_m is unit-variance CN(0,1) per
// entry. Bit-identical for identical specs; all random draws are taken in a
// fixed order that does not depend on rho or correlated_user_count, so sweeps
// over those parameters share common random numbers for a given seed.
ChannelSet generate_rician(const CorrelatedRicianSpec& spec);
RicianRealization generate_rician_parts(const CorrelatedRicianSpec& spec);

// |<h_i, h_j>| / (||h_i|| ||h_j||) averaged over subcarriers. Subcarriers where
// either vector vanishes contribute 0. Throws std::invalid_argument if i == j
// or either index is out of range.
double pairwise_correlation(const ChannelSet& channels, std::size_t i,
                            std::size_t j);

// Text interchange format:
//   chset v1 M=<int> NT=<int> SC=<int>
//   <user> <ant> <sc> <re> <im>      (one line per entry, lexicographic order)
// Indices are 0-based. Values are written with 17 significant digits so a
// write/load round trip is exact.
void write_channels(std::ostream& out, const ChannelSet& channels);
ChannelSet load_channels(std::istream& in);

}  // namespace mugroup

#endif  // MUGROUP_CHANNEL_HPP_
