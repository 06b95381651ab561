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

#include "mugroup/channel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "mugroup/errors.hpp"

namespace mugroup {

ChannelSet::ChannelSet(std::size_t num_users, std::size_t num_tx_antennas,
                       std::size_t num_subcarriers,
                       std::vector<Complex> entries)
    : num_users_(num_users),
      num_tx_antennas_(num_tx_antennas),
      num_subcarriers_(num_subcarriers),
      entries_(std::move(entries)) {
  if (num_users_ == 0 || num_tx_antennas_ == 0 || num_subcarriers_ == 0) {
    throw DimensionError("ChannelSet dimensions must be positive");
  }
  if (entries_.size() != num_users_ * num_tx_antennas_ * num_subcarriers_) {
    throw DimensionError("ChannelSet payload has " +
                         std::to_string(entries_.size()) + " entries, expected " +
                         std::to_string(num_users_ * num_tx_antennas_ *
                                        num_subcarriers_));
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!std::isfinite(entries_[k].real()) ||
        !std::isfinite(entries_[k].imag())) {
      throw std::invalid_argument("ChannelSet entry " + std::to_string(k) +
                                  " is not finite");
    }
  }
}

ChannelSet ChannelSet::zeros(std::size_t num_users,
                             std::size_t num_tx_antennas,
                             std::size_t num_subcarriers) {
  return ChannelSet(
      num_users, num_tx_antennas, num_subcarriers,
      std::vector<Complex>(num_users * num_tx_antennas * num_subcarriers));
}

Complex ChannelSet::at(std::size_t user, std::size_t antenna,
                       std::size_t subcarrier) const {
  if (user >= num_users_ || antenna >= num_tx_antennas_ ||
      subcarrier >= num_subcarriers_) {
    throw std::out_of_range("ChannelSet index out of range");
  }
  return entries_[index(user, antenna, subcarrier)];
}

std::vector<Complex> ChannelSet::user_vector(std::size_t user,
                                             std::size_t subcarrier) const {
  if (user >= num_users_ || subcarrier >= num_subcarriers_) {
    throw std::out_of_range("ChannelSet index out of range");
  }
  std::vector<Complex> h(num_tx_antennas_);
  for (std::size_t a = 0; a < num_tx_antennas_; ++a) {
    h[a] = entries_[index(user, a, subcarrier)];
  }
  return h;
}

ChannelSet ChannelSet::first_users(std::size_t count) const {
  if (count == 0 || count > num_users_) {
    throw DimensionError("cannot take " + std::to_string(count) +
                         " users from a channel set of " +
                         std::to_string(num_users_));
  }
  const std::size_t per_user = num_tx_antennas_ * num_subcarriers_;
  std::vector<Complex> sub(entries_.begin(),
                           entries_.begin() + static_cast<std::ptrdiff_t>(count * per_user));
  return ChannelSet(count, num_tx_antennas_, num_subcarriers_, std::move(sub));
}

void CorrelatedRicianSpec::validate() const {
  if (num_users == 0 || num_tx_antennas == 0 || num_subcarriers == 0) {
    throw DimensionError("Rician spec dimensions must be positive");
  }
  if (correlated_user_count > num_users) {
    throw DimensionError("correlated_user_count exceeds num_users");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in [0, 1]");
  }
  if (!std::isfinite(k_factor_db) || !(k_linear() > 0.0)) {
    throw std::invalid_argument("k_factor_db must be finite");
  }
}

double CorrelatedRicianSpec::k_linear() const {
  return std::pow(10.0, k_factor_db / 10.0);
}

RicianRealization generate_rician_parts(const CorrelatedRicianSpec& spec) {
  spec.validate();
  const std::size_t m_users = spec.num_users;
  const std::size_t nt = spec.num_tx_antennas;
  const std::size_t sc = spec.num_subcarriers;
  const std::size_t per_user = nt * sc;

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi / 2,
                                               std::numbers::pi / 2);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  auto cn = [&]() {
    const double re = gauss(rng);
    const double im = gauss(rng);
    return Complex(re, im);
  };

  // Draw order is fixed: angles, shared scatter, private scatter.
  std::vector<double> theta(m_users);
  for (auto& t : theta) t = angle(rng);
  std::vector<Complex> shared(per_user);
  for (auto& s : shared) s = cn();
  std::vector<Complex> priv(m_users * per_user);
  for (auto& p : priv) p = cn();

  const double k = spec.k_linear();
  const double los_scale = std::sqrt(k / (k + 1.0));
  const double nlos_scale = std::sqrt(1.0 / (k + 1.0));
  const double w_shared = std::sqrt(spec.rho);
  const double w_private = std::sqrt(1.0 - spec.rho);

  std::vector<Complex> los(m_users * per_user);
  std::vector<Complex> nlos(m_users * per_user);
  std::vector<Complex> total(m_users * per_user);
  for (std::size_t u = 0; u < m_users; ++u) {
    const double phase_step = std::numbers::pi * std::sin(theta[u]);
    const bool correlated = u < spec.correlated_user_count;
    for (std::size_t a = 0; a < nt; ++a) {
      const Complex steering = std::polar(1.0, phase_step * static_cast<double>(a));
      for (std::size_t s = 0; s < sc; ++s) {
        const std::size_t local = a * sc + s;
        const std::size_t k_idx = u * per_user + local;
        Complex scatter = priv[k_idx];
        if (correlated) {
          scatter = w_shared * shared[local] + w_private * priv[k_idx];
        }
        los[k_idx] = los_scale * steering;
        nlos[k_idx] = nlos_scale * scatter;
        total[k_idx] = los[k_idx] + nlos[k_idx];
      }
    }
  }
  return RicianRealization{ChannelSet(m_users, nt, sc, std::move(total)),
                           ChannelSet(m_users, nt, sc, std::move(los)),
                           ChannelSet(m_users, nt, sc, std::move(nlos))};
}

ChannelSet generate_rician(const CorrelatedRicianSpec& spec) {
  return std::move(generate_rician_parts(spec).channels);
}

double pairwise_correlation(const ChannelSet& channels, std::size_t i,
                            std::size_t j) {
  if (i == j) {
    throw std::invalid_argument("pairwise_correlation needs distinct users");
  }
  if (i >= channels.num_users() || j >= channels.num_users()) {
    throw std::invalid_argument("pairwise_correlation user out of range");
  }
  double sum = 0.0;
  for (std::size_t s = 0; s < channels.num_subcarriers(); ++s) {
    Complex inner{};
    double ni = 0.0;
    double nj = 0.0;
    for (std::size_t a = 0; a < channels.num_tx_antennas(); ++a) {
      const Complex hi = channels.at(i, a, s);
      const Complex hj = channels.at(j, a, s);
      inner += std::conj(hi) * hj;
      ni += std::norm(hi);
      nj += std::norm(hj);
    }
    if (ni > 0.0 && nj > 0.0) {
      sum += std::min(1.0, std::abs(inner) / std::sqrt(ni * nj));
    }
  }
  return sum / static_cast<double>(channels.num_subcarriers());
}

namespace {

void put_double(std::ostream& out, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out << buf;
}

std::size_t parse_dimension(const std::string& token, std::string_view key,
                            std::size_t line) {
  if (token.size() <= key.size() || token.compare(0, key.size(), key) != 0) {
    throw ParseError(line, "malformed header field '" + token + "', expected " +
                               std::string(key) + "<int>");
  }
  std::size_t value = 0;
  const char* first = token.data() + key.size();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "malformed header field '" + token + "'");
  }
  return value;
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::string record_name(std::size_t u, std::size_t a, std::size_t s) {
  return "record (user " + std::to_string(u) + ", ant " + std::to_string(a) +
         ", sc " + std::to_string(s) + ")";
}

}  // namespace

void write_channels(std::ostream& out, const ChannelSet& channels) {
  out << "chset v1 M=" << channels.num_users()
      << " NT=" << channels.num_tx_antennas()
      << " SC=" << channels.num_subcarriers() << '\n';
  for (std::size_t u = 0; u < channels.num_users(); ++u) {
    for (std::size_t a = 0; a < channels.num_tx_antennas(); ++a) {
      for (std::size_t s = 0; s < channels.num_subcarriers(); ++s) {
        const Complex h = channels.at(u, a, s);
        out << u << ' ' << a << ' ' << s << ' ';
        put_double(out, h.real());
        out << ' ';
        put_double(out, h.imag());
        out << '\n';
      }
    }
  }
}

ChannelSet load_channels(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError(1, "missing header");
  }
  ++line_no;
  std::istringstream header(line);
  std::string magic, version, m_tok, nt_tok, sc_tok, extra;
  if (!(header >> magic >> version >> m_tok >> nt_tok >> sc_tok) ||
      (header >> extra)) {
    throw ParseError(line_no, "malformed header '" + line + "'");
  }
  if (magic != "chset" || version != "v1") {
    throw ParseError(line_no, "unknown format '" + magic + " " + version + "'");
  }
  const std::size_t m_users = parse_dimension(m_tok, "M=", line_no);
  const std::size_t nt = parse_dimension(nt_tok, "NT=", line_no);
  const std::size_t sc = parse_dimension(sc_tok, "SC=", line_no);
  if (m_users == 0 || nt == 0 || sc == 0) {
    throw ParseError(line_no, "header dimensions must be positive");
  }

  std::vector<Complex> entries;
  entries.reserve(m_users * nt * sc);
  for (std::size_t u = 0; u < m_users; ++u) {
    for (std::size_t a = 0; a < nt; ++a) {
      for (std::size_t s = 0; s < sc; ++s) {
        do {
          if (!std::getline(in, line)) {
            throw ParseError(line_no + 1, "unexpected end of input, missing " +
                                              record_name(u, a, s) +
                                              " (dimension mismatch)");
          }
          ++line_no;
        } while (is_blank(line));

        std::istringstream rec(line);
        std::size_t ru = 0, ra = 0, rs = 0;
        std::string re_tok, im_tok, tail;
        if (!(rec >> ru >> ra >> rs >> re_tok >> im_tok) || (rec >> tail)) {
          throw ParseError(line_no, "malformed " + record_name(u, a, s) +
                                        ": '" + line + "'");
        }
        if (ru != u || ra != a || rs != s) {
          throw ParseError(line_no, "expected " + record_name(u, a, s) +
                                        ", found " + record_name(ru, ra, rs));
        }
        auto parse_value = [&](const std::string& tok) {
          char* end = nullptr;
          const double v = std::strtod(tok.c_str(), &end);
          if (end == tok.c_str() || *end != '\0') {
            throw ParseError(line_no, "malformed value '" + tok + "' in " +
                                          record_name(u, a, s));
          }
          if (!std::isfinite(v)) {
            throw ParseError(line_no, "non-finite value '" + tok + "' in " +
                                          record_name(u, a, s));
          }
          return v;
        };
        const double re = parse_value(re_tok);
        const double im = parse_value(im_tok);
        entries.emplace_back(re, im);
      }
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) {
      throw ParseError(line_no, "trailing record beyond declared dimensions");
    }
  }
  return ChannelSet(m_users, nt, sc, std::move(entries));
}

}  // namespace mugroup
