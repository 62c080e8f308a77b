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

#include "fsad/text_format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace fsad {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::array<char, 64> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::optional<double> parse_double(std::string_view token) {
  if (token.empty()) return std::nullopt;
  // from_chars rejects a leading '+'.
  if (token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::string format_pair(double a, double b) {
  return format_double(a) + "," + format_double(b);
}

std::optional<std::pair<double, double>> parse_pair(std::string_view token) {
  const auto comma = token.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto a = parse_double(token.substr(0, comma));
  auto b = parse_double(token.substr(comma + 1));
  if (!a || !b) return std::nullopt;
  return std::make_pair(*a, *b);
}

}  // namespace fsad
