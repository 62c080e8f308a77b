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

#include "fsad/bench.hpp"

#include <algorithm>
#include <string>

#include "fsad/text_format.hpp"

namespace fsad {

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.k << ',' << format_double(r.forward_s) << ','
        << format_double(r.rule_s) << ',' << format_double(r.naive_s) << ','
        << r.forward_allocs << ',' << r.rule_allocs << ',' << r.naive_allocs
        << '\n';
  }
}

void validate_repeats(std::span<const int> repeats) {
  if (repeats.empty()) throw InvalidArgument("repeats must not be empty");
  for (std::size_t i = 0; i < repeats.size(); ++i) {
    if (repeats[i] < 1) {
      throw InvalidArgument("repeats must be positive, got " +
                            std::to_string(repeats[i]));
    }
    if (i > 0 && repeats[i] <= repeats[i - 1]) {
      throw InvalidArgument("repeats must be strictly increasing");
    }
  }
}

namespace internal {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  const std::size_t mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
  if (xs.size() % 2 == 1) return xs[mid];
  const double hi = xs[mid];
  const double lo = *std::max_element(xs.begin(), xs.begin() + mid);
  return 0.5 * (lo + hi);
}

}  // namespace internal
}  // namespace fsad
