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

#ifndef MUGROUP_GROUP_HPP_
#define MUGROUP_GROUP_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mugroup {

// 0-based station index.
using UserId = std::size_t;

// A transmission group: SU when size() == 1, MU_size() otherwise. Members are
// kept distinct and sorted ascending, so two groups with the same members
// compare equal regardless of construction order.
class Group {
 public:
  Group() = default;
  Group(std::initializer_list<UserId> members);
  // Throws std::invalid_argument on duplicate members.
  explicit Group(std::vector<UserId> members);

  static Group single(UserId user) { return Group{user}; }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const UserId> members() const noexcept { return members_; }
  UserId least() const;
  bool contains(UserId user) const noexcept;

  // this ∪ {user}; throws std::invalid_argument if user is already a member.
  Group with(UserId user) const;

  // Bit i set for member i; throws std::out_of_range if a member is >= 64.
  std::uint64_t mask() const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend auto operator<=>(const Group&, const Group&) = default;
  friend bool operator==(const Group&, const Group&) = default;

 private:
  std::vector<UserId> members_;
};

// "{0,3,5}"
std::string to_string(const Group& group);
std::ostream& operator<<(std::ostream& out, const Group& group);

}  // namespace mugroup

#endif  // MUGROUP_GROUP_HPP_
