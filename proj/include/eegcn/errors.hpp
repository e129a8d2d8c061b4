// Copyright 2026 The eegcn Authors.
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

#ifndef EEGCN_ERRORS_HPP_
#define EEGCN_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eegcn {

// Invalid configuration or arguments supplied by the caller. CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data. CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failure carrying the byte offset (binary formats) or 1-based line
// number (text formats) where parsing stopped.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t position, const char* unit = "byte")
      : DataError(what + " (at " + unit + " " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A library invariant was violated at runtime. CLI exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eegcn

#endif  // EEGCN_ERRORS_HPP_
