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

#ifndef FSAD_COMPARE_HPP_
#define FSAD_COMPARE_HPP_

#include <algorithm>
#include <cmath>

#include "fsad/oracle.hpp"
#include "fsad/semiring.hpp"

namespace fsad {

// |a - b| <= rel * max(1, |a|, |b|). Equal infinities compare equal; NaN
// never does. The unit floor turns the test absolute for quantities below
// one, where a purely relative bound is meaningless for values near zero.
inline bool approx_equal(double a, double b, double rel) {
  if (a == b) return true;
  if (std::isnan(a) || std::isnan(b)) return false;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Counted (min/max) values compare exactly, value and count; others compare
// every differentiable coordinate with approx_equal.
template <DifferentiableSemiring S>
bool values_close(const typename S::Value& a, const typename S::Value& b,
                  double rel) {
  if constexpr (is_counted_semiring_v<S>) {
    return a == b;
  } else {
    for (int k = 0; k < S::kTangentDim; ++k) {
      if (!approx_equal(S::tangent(a, k), S::tangent(b, k), rel)) return false;
    }
    return true;
  }
}

template <DifferentiableSemiring S>
bool cotangents_close(const typename S::Cotangent& a,
                      const typename S::Cotangent& b, double rel) {
  for (int k = 0; k < S::kTangentDim; ++k) {
    if (!approx_equal(S::cotangent_coord(a, k), S::cotangent_coord(b, k),
                      rel)) {
      return false;
    }
  }
  return true;
}

}  // namespace fsad

#endif  // FSAD_COMPARE_HPP_
