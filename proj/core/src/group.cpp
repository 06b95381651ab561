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

#include "mugroup/group.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace mugroup {

Group::Group(std::initializer_list<UserId> members)
    : Group(std::vector<UserId>(members)) {}

Group::Group(std::vector<UserId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw std::invalid_argument("group has duplicate members");
  }
}

UserId Group::least() const {
  if (members_.empty()) throw std::logic_error("empty group has no members");
  return members_.front();
}

bool Group::contains(UserId user) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), user);
}

Group Group::with(UserId user) const {
  if (contains(user)) {
    throw std::invalid_argument("user " + std::to_string(user) +
                                " is already in group " + to_string(*this));
  }
  Group out;
  out.members_ = members_;
  out.members_.insert(
      std::upper_bound(out.members_.begin(), out.members_.end(), user), user);
  return out;
}

std::uint64_t Group::mask() const {
  std::uint64_t m = 0;
  for (UserId u : members_) {
    if (u >= 64) throw std::out_of_range("group member >= 64 has no mask bit");
    m |= std::uint64_t{1} << u;
  }
  return m;
}

std::string to_string(const Group& group) {
  std::ostringstream out;
  out << group;
  return out.str();
}

std::ostream& operator<<(std::ostream& out, const Group& group) {
  out << '{';
  bool first = true;
  for (UserId u : group) {
    if (!first) out << ',';
    out << u;
    first = false;
  }
  return out << '}';
}

}  // namespace mugroup
