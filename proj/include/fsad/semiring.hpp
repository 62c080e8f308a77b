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

// The differentiable-semiring contract.
//
// A semiring type S is a small immutable object holding its parameters
// (temperature, deformation, ...). Elements are plain values of type
// S::Value and adjoints are S::Cotangent. Besides the algebra, every
// semiring provides three local derivative primitives from which the
// vector-Jacobian products of dot products and shortest distances are
// assembled without a tape:
//
//   pullback_through_sum(z, u, delta)  delta * dz/dmu(z) * dmu(u)/du
//   vjp_mul_left(a, b, delta)          delta * d(a (x) b)/da
//   vjp_mul_right(a, b, delta)         delta * d(a (x) b)/db
//
// where z is an (+)-sum having u among its terms and mu is the monoid
// isomorphism (S, (+), 0) -> (R^n, +, 0). Min/max semirings, which have no
// such isomorphism, carry a tie count instead and implement the same three
// primitives as averaged subgradients.

#ifndef FSAD_SEMIRING_HPP_
#define FSAD_SEMIRING_HPP_

#include <concepts>
#include <string>
#include <string_view>
#include <utility>

#include "fsad/errors.hpp"

namespace fsad {

enum class BinaryOp { kPlus, kTimes };

struct SemiringParams {
  double tau = 1.0;    // log-semiring temperature, > 0
  double kappa = 0.5;  // kappa-deformation, in (0, 1]

  friend bool operator==(const SemiringParams&, const SemiringParams&) =
      default;
};

// Two reals. Used as element, morphism image and cotangent of the
// expectation semiring.
struct Pair {
  double first = 0.0;
  double second = 0.0;

  friend bool operator==(const Pair&, const Pair&) = default;

  Pair& operator+=(const Pair& o) {
    first += o.first;
    second += o.second;
    return *this;
  }
  friend Pair operator+(Pair a, const Pair& b) { return a += b; }
  friend Pair operator*(double s, const Pair& p) {
    return {s * p.first, s * p.second};
  }
  friend Pair operator*(const Pair& p, double s) { return s * p; }
};

template <typename S>
concept DifferentiableSemiring =
    std::equality_comparable<S> &&
    requires(const S s, const typename S::Value v,
             const typename S::Cotangent c, BinaryOp op, std::string_view text,
             typename S::Value mutable_v, int k, double x) {
      { S::kName } -> std::convertible_to<std::string_view>;
      { S::kTangentDim } -> std::convertible_to<int>;
      { s.zero() } -> std::same_as<typename S::Value>;
      { s.one() } -> std::same_as<typename S::Value>;
      { s.is_zero(v) } -> std::same_as<bool>;
      { s.plus(v, v) } -> std::same_as<typename S::Value>;
      { s.times(v, v) } -> std::same_as<typename S::Value>;
      { s.pullback_through_sum(v, v, c) } -> std::same_as<typename S::Cotangent>;
      { s.vjp_mul_left(v, v, c) } -> std::same_as<typename S::Cotangent>;
      { s.vjp_mul_right(v, v, c) } -> std::same_as<typename S::Cotangent>;
      {
        s.direct_partials(op, v, v, c)
      } -> std::same_as<std::pair<typename S::Cotangent, typename S::Cotangent>>;
      { s.zero_cotangent() } -> std::same_as<typename S::Cotangent>;
      { s.unit_cotangent() } -> std::same_as<typename S::Cotangent>;
      { c + c } -> std::convertible_to<typename S::Cotangent>;
      { x * c } -> std::convertible_to<typename S::Cotangent>;
      { s.format(v) } -> std::same_as<std::string>;
      { s.format_cotangent(c) } -> std::same_as<std::string>;
      { s.parse(text) } -> std::same_as<typename S::Value>;
      { s.parse_cotangent(text) } -> std::same_as<typename S::Cotangent>;
      // Differentiable coordinates, used by finite-difference oracles.
      { S::tangent(v, k) } -> std::same_as<double>;
      { S::set_tangent(mutable_v, k, x) };
      { S::cotangent_coord(c, k) } -> std::same_as<double>;
    };

// Semirings whose additive monoid is isomorphic to (R^n, +, 0).
template <typename S>
concept MorphismSemiring =
    DifferentiableSemiring<S> &&
    requires(const S s, const typename S::Value v,
             const typename S::Image img) {
      { s.morphism(v) } -> std::same_as<typename S::Image>;
      { s.morphism_inverse(img) } -> std::same_as<typename S::Value>;
    };

template <DifferentiableSemiring S>
void require_same_semiring(const S& a, const S& b) {
  if (!(a == b)) {
    throw InvalidArgument(std::string(S::kName) +
                          ": operands carry different semiring parameters");
  }
}

}  // namespace fsad

#endif  // FSAD_SEMIRING_HPP_
