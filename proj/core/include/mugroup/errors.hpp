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

#ifndef MUGROUP_ERRORS_HPP_
#define MUGROUP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mugroup {

// Argument errors (bad indices, oversize groups, i == j, ...) are reported as
// std::invalid_argument. The types below cover the remaining failure classes.

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // 1-based line of the offending record.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The stacked group channel is rank deficient; zero forcing is undefined.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search would exceed its configured work cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mugroup

#endif  // MUGROUP_ERRORS_HPP_
