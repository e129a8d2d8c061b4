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

#ifndef EEGCN_CSV_HPP_
#define EEGCN_CSV_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eegcn::csv {

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

// Strict full-field parse; leading/trailing blanks are ignored.
std::optional<double> parse_double(std::string_view field);
std::optional<long long> parse_int(std::string_view field);

// Splits one line on commas. No quoting support: none of our schemas emit
// quoted fields.
std::vector<std::string_view> split(std::string_view line, char sep = ',');

// Splits text into lines, accepting LF and CRLF endings.
std::vector<std::string_view> lines(std::string_view text);

std::string_view trim(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace eegcn::csv

#endif  // EEGCN_CSV_HPP_
