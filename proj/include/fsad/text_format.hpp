// Copyright 2026 The fsad Authors
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

#ifndef FSAD_TEXT_FORMAT_HPP_
#define FSAD_TEXT_FORMAT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace fsad {

// Shortest decimal string that parses back to the same double. Infinities
// are written as "inf" / "-inf".
std::string format_double(double x);

// Strict parse of a whole token; accepts "inf", "-inf", "nan" and anything
// std::from_chars accepts. Returns nullopt on trailing garbage.
std::optional<double> parse_double(std::string_view token);

// "a,b" with no interior spaces.
std::string format_pair(double a, double b);
std::optional<std::pair<double, double>> parse_pair(std::string_view token);

}  // namespace fsad

#endif  // FSAD_TEXT_FORMAT_HPP_
