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

// Concrete semirings: real, log (temperature tau), log-kappa, log-expectation
// and the count-augmented tropical (min-plus) and arctic (max-plus) semirings.

#ifndef FSAD_SEMIRINGS_HPP_
#define FSAD_SEMIRINGS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "fsad/errors.hpp"
#include "fsad/semiring.hpp"
#include "fsad/text_format.hpp"

namespace fsad {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace internal {

double parse_scalar_weight(std::string_view text, std::string_view semiring);
Pair parse_pair_weight(std::string_view text, std::string_view semiring);

// log(exp(a) + exp(b)) in the shifted form.
inline double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace internal

// (R, +, x, 0, 1). The morphism is the identity.
class RealSemiring {
 public:
  using Value = double;
  using Cotangent = double;
  using Image = double;
  static constexpr std::string_view kName = "real";
  static constexpr int kTangentDim = 1;

  friend bool operator==(const RealSemiring&, const RealSemiring&) = default;

  Value zero() const { return 0.0; }
  Value one() const { return 1.0; }
  bool is_zero(Value v) const { return v == 0.0; }
  Value plus(Value a, Value b) const { return a + b; }
  Value times(Value a, Value b) const { return a * b; }

  Image morphism(Value v) const { return v; }
  Value morphism_inverse(Image r) const { return r; }

  Cotangent pullback_through_sum(Value, Value, Cotangent delta) const {
    return delta;
  }
  Cotangent vjp_mul_left(Value, Value b, Cotangent delta) const {
    return delta * b;
  }
  Cotangent vjp_mul_right(Value a, Value, Cotangent delta) const {
    return delta * a;
  }
  std::pair<Cotangent, Cotangent> direct_partials(BinaryOp op, Value a,
                                                  Value b,
                                                  Cotangent delta) const {
    if (op == BinaryOp::kPlus) return {delta, delta};
    return {delta * b, delta * a};
  }

  Cotangent zero_cotangent() const { return 0.0; }
  Cotangent unit_cotangent() const { return 1.0; }

  std::string format(Value v) const { return format_double(v); }
  std::string format_cotangent(Cotangent c) const { return format_double(c); }
  Value parse(std::string_view text) const {
    return internal::parse_scalar_weight(text, kName);
  }
  Cotangent parse_cotangent(std::string_view text) const {
    return internal::parse_scalar_weight(text, kName);
  }

  static double tangent(Value v, int) { return v; }
  static void set_tangent(Value& v, int, double x) { v = x; }
  static double cotangent_coord(Cotangent c, int) { return c; }
};

// (R u {-inf}, tau^-1 log(e^{tau a} + e^{tau b}), +, -inf, 0), mu(x) = e^{tau x}.
class LogSemiring {
 public:
  using Value = double;
  using Cotangent = double;
  using Image = double;
  static constexpr std::string_view kName = "log";
  static constexpr int kTangentDim = 1;

  explicit LogSemiring(double tau = 1.0) : tau_(tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw InvalidArgument("log semiring: tau must be a positive real");
    }
  }

  double tau() const { return tau_; }

  friend bool operator==(const LogSemiring&, const LogSemiring&) = default;

  Value zero() const { return -kInf; }
  Value one() const { return 0.0; }
  bool is_zero(Value v) const { return v == -kInf; }

  Value plus(Value a, Value b) const {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(tau_ * (lo - hi))) / tau_;
  }
  Value times(Value a, Value b) const { return a + b; }

  Image morphism(Value v) const { return std::exp(tau_ * v); }
  Value morphism_inverse(Image r) const {
    if (r < 0.0 || std::isnan(r)) {
      throw DomainError("log semiring: morphism inverse of a negative value");
    }
    if (r == 0.0) return -kInf;
    return std::log(r) / tau_;
  }

  Cotangent pullback_through_sum(Value z, Value u, Cotangent delta) const {
    if (u == -kInf || z == -kInf) return 0.0;
    return delta * std::exp(tau_ * (u - z));
  }
  Cotangent vjp_mul_left(Value, Value, Cotangent delta) const { return delta; }
  Cotangent vjp_mul_right(Value, Value, Cotangent delta) const { return delta; }

  std::pair<Cotangent, Cotangent> direct_partials(BinaryOp op, Value a,
                                                  Value b,
                                                  Cotangent delta) const {
    if (op == BinaryOp::kTimes) return {delta, delta};
    if (a == -kInf && b == -kInf) return {0.0, 0.0};
    // Softmax weights of the two operands.
    const double wa = 1.0 / (1.0 + std::exp(tau_ * (b - a)));
    const double wb = 1.0 / (1.0 + std::exp(tau_ * (a - b)));
    return {delta * wa, delta * wb};
  }

  Cotangent zero_cotangent() const { return 0.0; }
  Cotangent unit_cotangent() const { return 1.0; }

  std::string format(Value v) const { return format_double(v); }
  std::string format_cotangent(Cotangent c) const { return format_double(c); }
  Value parse(std::string_view text) const {
    return internal::parse_scalar_weight(text, kName);
  }
  Cotangent parse_cotangent(std::string_view text) const {
    return internal::parse_scalar_weight(text, kName);
  }

  static double tangent(Value v, int) { return v; }
  static void set_tangent(Value& v, int, double x) { v = x; }
  static double cotangent_coord(Cotangent c, int) { return c; }

 private:
  double tau_;
};

// Kaniadakis deformation of the log semiring. The morphism is the
// kappa-exponential
//
//   exp_k(x) = (sqrt(1 + k^2 x^2) + k x)^(1/k) = exp(asinh(k x) / k)
//
// with inverse log_k(r) = (r^k - r^-k) / (2k) = sinh(k ln r) / k. Sums are
// evaluated through the exponent L(x) = asinh(k x) / k so that mu is never
// formed explicitly.
class LogKappaSemiring {
 public:
  using Value = double;
  using Cotangent = double;
  using Image = double;
  static constexpr std::string_view kName = "logk";
  static constexpr int kTangentDim = 1;

  explicit LogKappaSemiring(double kappa = 0.5) : kappa_(kappa) {
    if (!(kappa > 0.0 && kappa <= 1.0)) {
      throw InvalidArgument("logk semiring: kappa must lie in (0, 1]");
    }
  }

  double kappa() const { return kappa_; }

  friend bool operator==(const LogKappaSemiring&,
                         const LogKappaSemiring&) = default;

  Value zero() const { return -kInf; }
  Value one() const { return 0.0; }
  bool is_zero(Value v) const { return v == -kInf; }

  Value plus(Value a, Value b) const {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double s = internal::log_add(exponent(a), exponent(b));
    return std::sinh(kappa_ * s) / kappa_;
  }
  Value times(Value a, Value b) const {
    if (a == -kInf || b == -kInf) return -kInf;
    return a * std::hypot(1.0, kappa_ * b) + b * std::hypot(1.0, kappa_ * a);
  }

  Image morphism(Value v) const {
    if (v == -kInf) return 0.0;
    return std::exp(exponent(v));
  }
  Value morphism_inverse(Image r) const {
    if (r < 0.0 || std::isnan(r)) {
      throw DomainError("logk semiring: morphism inverse of a negative value");
    }
    if (r == 0.0) return -kInf;
    return std::sinh(kappa_ * std::log(r)) / kappa_;
  }

  // mu'(x) = exp_k(x) / sqrt(1 + k^2 x^2); the ratio mu'(u) / mu'(z) is
  // formed in the exponent.
  Cotangent pullback_through_sum(Value z, Value u, Cotangent delta) const {
    if (u == -kInf || z == -kInf) return 0.0;
    return delta * std::exp(exponent(u) - exponent(z)) *
           std::hypot(1.0, kappa_ * z) / std::hypot(1.0, kappa_ * u);
  }
  Cotangent vjp_mul_left(Value a, Value b, Cotangent delta) const {
    if (a == -kInf || b == -kInf) return 0.0;
    const double k2 = kappa_ * kappa_;
    return delta * (std::hypot(1.0, kappa_ * b) +
                    k2 * a * b / std::hypot(1.0, kappa_ * a));
  }
  Cotangent vjp_mul_right(Value a, Value b, Cotangent delta) const {
    if (a == -kInf || b == -kInf) return 0.0;
    const double k2 = kappa_ * kappa_;
    return delta * (std::hypot(1.0, kappa_ * a) +
                    k2 * a * b / std::hypot(1.0, kappa_ * b));
  }

  std::pair<Cotangent, Cotangent> direct_partials(BinaryOp op, Value a,
                                                  Value b,
                                                  Cotangent delta) const {
    if (op == BinaryOp::kTimes) {
      return {vjp_mul_left(a, b, delta), vjp_mul_right(a, b, delta)};
    }
    const Value r = plus(a, b);
    return {pullback_through_sum(r, a, delta),
            pullback_through_sum(r, b, delta)};
  }

  Cotangent zero_cotangent() const { return 0.0; }
  Cotangent unit_cotangent() const { return 1.0; }

  std::string format(Value v) const { return format_double(v); }
  std::string format_cotangent(Cotangent c) const { return format_double(c); }
  Value parse(std::string_view text) const {
    return internal::parse_scalar_weight(text, kName);
  }
  Cotangent parse_cotangent(std::string_view text) const {
    return internal::parse_scalar_weight(text, kName);
  }

  static double tangent(Value v, int) { return v; }
  static void set_tangent(Value& v, int, double x) { v = x; }
  static double cotangent_coord(Cotangent c, int) { return c; }

 private:
  double exponent(Value x) const { return std::asinh(kappa_ * x) / kappa_; }

  double kappa_;
};

// Log-expectation semiring on pairs (x, a):
//   (x, a) (+) (y, b) = (log(e^x + e^y), a + b)
//   (x, a) (x) (y, b) = (x + y, e^x b + e^y a)
// with 0 = (-inf, 0), 1 = (0, 0) and mu(x, a) = (e^x, a).
class LogExpectationSemiring {
 public:
  using Value = Pair;
  using Cotangent = Pair;
  using Image = Pair;
  static constexpr std::string_view kName = "logexp";
  static constexpr int kTangentDim = 2;

  friend bool operator==(const LogExpectationSemiring&,
                         const LogExpectationSemiring&) = default;

  Value zero() const { return {-kInf, 0.0}; }
  Value one() const { return {0.0, 0.0}; }
  bool is_zero(const Value& v) const {
    return v.first == -kInf && v.second == 0.0;
  }

  Value plus(const Value& a, const Value& b) const {
    return {internal::log_add(a.first, b.first), a.second + b.second};
  }
  Value times(const Value& a, const Value& b) const {
    return {a.first + b.first,
            std::exp(a.first) * b.second + std::exp(b.first) * a.second};
  }

  Image morphism(const Value& v) const { return {std::exp(v.first), v.second}; }
  Value morphism_inverse(const Image& r) const {
    if (r.first < 0.0 || std::isnan(r.first)) {
      throw DomainError(
          "logexp semiring: morphism inverse of a negative value");
    }
    return {r.first == 0.0 ? -kInf : std::log(r.first), r.second};
  }

  Cotangent pullback_through_sum(const Value& z, const Value& u,
                                 const Cotangent& delta) const {
    const double scale = (u.first == -kInf || z.first == -kInf)
                             ? 0.0
                             : std::exp(u.first - z.first);
    return {delta.first * scale, delta.second};
  }
  Cotangent vjp_mul_left(const Value& a, const Value& b,
                         const Cotangent& delta) const {
    return {delta.first + delta.second * std::exp(a.first) * b.second,
            delta.second * std::exp(b.first)};
  }
  Cotangent vjp_mul_right(const Value& a, const Value& b,
                          const Cotangent& delta) const {
    return {delta.first + delta.second * std::exp(b.first) * a.second,
            delta.second * std::exp(a.first)};
  }

  std::pair<Cotangent, Cotangent> direct_partials(BinaryOp op, const Value& a,
                                                  const Value& b,
                                                  const Cotangent& delta) const {
    if (op == BinaryOp::kTimes) {
      return {vjp_mul_left(a, b, delta), vjp_mul_right(a, b, delta)};
    }
    double wa = 0.0;
    double wb = 0.0;
    if (a.first != -kInf || b.first != -kInf) {
      wa = 1.0 / (1.0 + std::exp(b.first - a.first));
      wb = 1.0 / (1.0 + std::exp(a.first - b.first));
    }
    return {{delta.first * wa, delta.second}, {delta.first * wb, delta.second}};
  }

  Cotangent zero_cotangent() const { return {0.0, 0.0}; }
  Cotangent unit_cotangent() const { return {1.0, 0.0}; }

  std::string format(const Value& v) const {
    return format_pair(v.first, v.second);
  }
  std::string format_cotangent(const Cotangent& c) const {
    return format_pair(c.first, c.second);
  }
  Value parse(std::string_view text) const {
    return internal::parse_pair_weight(text, kName);
  }
  Cotangent parse_cotangent(std::string_view text) const {
    return internal::parse_pair_weight(text, kName);
  }

  static double tangent(const Value& v, int k) {
    return k == 0 ? v.first : v.second;
  }
  static void set_tangent(Value& v, int k, double x) {
    (k == 0 ? v.first : v.second) = x;
  }
  static double cotangent_coord(const Cotangent& c, int k) {
    return k == 0 ? c.first : c.second;
  }
};

// Element of a count-augmented min/max semiring: the optimal value and the
// number of (weighted) arguments attaining it.
struct CountedValue {
  double value = 0.0;
  double count = 1.0;

  friend bool operator==(const CountedValue&, const CountedValue&) = default;
};

struct MinOrder {
  static constexpr std::string_view kName = "tropical";
  static constexpr double kWorst = kInf;
  static bool better(double a, double b) { return a < b; }
};

struct MaxOrder {
  static constexpr std::string_view kName = "arctic";
  static constexpr double kWorst = -kInf;
  static bool better(double a, double b) { return a > b; }
};

// Tropical (min, +) or arctic (max, +) semiring augmented with tie counts:
//
//   (x, Cx) (+) (y, Cy) = winner's pair, or (x, Cx + Cy) on an exact tie
//   (x, Cx) (x) (y, Cy) = (x + y, Cx Cy)
//
// with 0 = (worst, 0) and 1 = (0, 1). The derivative of a sum z with
// respect to one of its terms u is the averaged subgradient
// 1[u = z] * C_u / C_z. Ties are detected with exact equality: min and max
// copy operand bits, so equal provenance gives equal bits.
template <typename Order>
class CountedSemiring {
 public:
  using Value = CountedValue;
  using Cotangent = double;
  using Image = double;
  static constexpr std::string_view kName = Order::kName;
  static constexpr int kTangentDim = 1;

  friend bool operator==(const CountedSemiring&,
                         const CountedSemiring&) = default;

  Value zero() const { return {Order::kWorst, 0.0}; }
  Value one() const { return {0.0, 1.0}; }
  bool is_zero(const Value& v) const { return v.value == Order::kWorst; }

  Value plus(const Value& a, const Value& b) const {
    if (Order::better(a.value, b.value)) return a;
    if (Order::better(b.value, a.value)) return b;
    return {a.value, a.count + b.count};
  }
  Value times(const Value& a, const Value& b) const {
    if (is_zero(a) || is_zero(b)) return zero();
    return {a.value + b.value, a.count * b.count};
  }

  // No global isomorphism exists; the per-sum family f_{z,C_z} is only ever
  // used through its derivative in pullback_through_sum.
  Image morphism(const Value&) const {
    throw UnsupportedOperation(std::string(kName) +
                               " semiring has no additive morphism");
  }
  Value morphism_inverse(Image) const {
    throw UnsupportedOperation(std::string(kName) +
                               " semiring has no additive morphism");
  }

  Cotangent pullback_through_sum(const Value& z, const Value& u,
                                 Cotangent delta) const {
    if (is_zero(z) || is_zero(u) || u.value != z.value || z.count == 0.0) {
      return 0.0;
    }
    return delta * u.count / z.count;
  }
  Cotangent vjp_mul_left(const Value&, const Value&, Cotangent delta) const {
    return delta;
  }
  Cotangent vjp_mul_right(const Value&, const Value&, Cotangent delta) const {
    return delta;
  }

  std::pair<Cotangent, Cotangent> direct_partials(BinaryOp op, const Value& a,
                                                  const Value& b,
                                                  Cotangent delta) const {
    if (op == BinaryOp::kTimes) return {delta, delta};
    const Value r = plus(a, b);
    return {pullback_through_sum(r, a, delta),
            pullback_through_sum(r, b, delta)};
  }

  Cotangent zero_cotangent() const { return 0.0; }
  Cotangent unit_cotangent() const { return 1.0; }

  std::string format(const Value& v) const {
    return format_pair(v.value, v.count);
  }
  std::string format_cotangent(Cotangent c) const { return format_double(c); }
  Value parse(std::string_view text) const {
    const Pair p = internal::parse_pair_weight(text, kName);
    if (!(p.second >= 0.0)) {
      throw InvalidArgument(std::string(kName) +
                            " weight count must be non-negative");
    }
    return {p.first, p.second};
  }
  Cotangent parse_cotangent(std::string_view text) const {
    return internal::parse_scalar_weight(text, kName);
  }

  static double tangent(const Value& v, int) { return v.value; }
  static void set_tangent(Value& v, int, double x) { v.value = x; }
  static double cotangent_coord(Cotangent c, int) { return c; }
};

using TropicalCountedSemiring = CountedSemiring<MinOrder>;
using ArcticCountedSemiring = CountedSemiring<MaxOrder>;

static_assert(MorphismSemiring<RealSemiring>);
static_assert(MorphismSemiring<LogSemiring>);
static_assert(MorphismSemiring<LogKappaSemiring>);
static_assert(MorphismSemiring<LogExpectationSemiring>);
static_assert(DifferentiableSemiring<TropicalCountedSemiring>);
static_assert(DifferentiableSemiring<ArcticCountedSemiring>);

}  // namespace fsad

#endif  // FSAD_SEMIRINGS_HPP_
