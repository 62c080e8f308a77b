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

// Brute-force references used by tests and by `fsad check`: accepting-path
// enumeration, central finite differences, the averaged subgradient of
// min/max semirings, and an operation-counting semiring wrapper. None of
// these share code paths with the dynamic program they validate beyond the
// semiring's plus/times.

#ifndef FSAD_ORACLE_HPP_
#define FSAD_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fsad/automaton.hpp"
#include "fsad/errors.hpp"
#include "fsad/linalg.hpp"
#include "fsad/semiring.hpp"
#include "fsad/semirings.hpp"
#include "fsad/text_format.hpp"
#include "fsad/weight.hpp"

namespace fsad {

inline constexpr std::size_t kDefaultMaxPaths = 100000;

template <typename S>
inline constexpr bool is_counted_semiring_v = false;
template <typename Order>
inline constexpr bool is_counted_semiring_v<CountedSemiring<Order>> = true;

template <DifferentiableSemiring S>
struct PathRecord {
  std::vector<std::size_t> arcs;  // empty for a length-0 path
  std::size_t start = 0;
  std::size_t end = 0;
  typename S::Value weight{};  // lambda(start) (x) w(e1) (x) ... (x) rho(end)
};

// Number of accepting paths, computed by counting in doubles over a
// topological order. Works on unsorted (acyclic) automata.
template <DifferentiableSemiring S>
double count_accepting_paths(const Automaton<S>& a) {
  const S& s = a.semiring();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& arc : a.arcs()) edges.emplace_back(arc.origin, arc.dest);
  const auto perm = topological_order(a.num_states(), edges);
  std::vector<std::size_t> by_rank(a.num_states());
  for (std::size_t q = 0; q < perm.size(); ++q) by_rank[perm[q]] = q;

  std::vector<std::vector<std::size_t>> out(a.num_states());
  for (const auto& arc : a.arcs()) out[arc.origin].push_back(arc.dest);
  std::vector<double> from(a.num_states(), 0.0);
  for (std::size_t r = a.num_states(); r-- > 0;) {
    const std::size_t q = by_rank[r];
    double c = s.is_zero(a.final_weight(q)) ? 0.0 : 1.0;
    for (std::size_t next : out[q]) c += from[next];
    from[q] = c;
  }
  double total = 0.0;
  for (const auto& [q, w] : a.initial()) {
    if (!s.is_zero(w)) total += from[q];
  }
  return total;
}

// All accepting paths, from any state with nonzero initial weight to any
// state with nonzero final weight, sorted lexicographically by arc indices
// (length-0 paths first, by state).
template <DifferentiableSemiring S>
std::vector<PathRecord<S>> enumerate_paths(
    const Automaton<S>& a, std::size_t max_paths = kDefaultMaxPaths) {
  const double total = count_accepting_paths(a);
  if (total > static_cast<double>(max_paths)) {
    throw PathExplosionError("automaton has " + format_double(total) +
                             " accepting paths (limit " +
                             std::to_string(max_paths) + ")");
  }
  const S& s = a.semiring();
  std::vector<std::vector<std::size_t>> out(a.num_states());
  for (std::size_t e = 0; e < a.num_arcs(); ++e) {
    out[a.arc(e).origin].push_back(e);
  }

  std::vector<PathRecord<S>> paths;
  std::vector<std::size_t> stack;
  auto visit = [&](auto&& self, std::size_t start, std::size_t q,
                   const typename S::Value& prefix) -> void {
    const auto rho = a.final_weight(q);
    if (!s.is_zero(rho)) {
      paths.push_back({stack, start, q, s.times(prefix, rho)});
    }
    for (std::size_t e : out[q]) {
      stack.push_back(e);
      self(self, start, a.arc(e).dest, s.times(prefix, a.arc(e).weight));
      stack.pop_back();
    }
  };
  for (const auto& [q, lambda] : a.initial()) {
    if (!s.is_zero(lambda)) visit(visit, q, q, lambda);
  }
  std::stable_sort(paths.begin(), paths.end(),
                   [](const PathRecord<S>& x, const PathRecord<S>& y) {
                     if (x.arcs != y.arcs) return x.arcs < y.arcs;
                     return x.start < y.start;
                   });
  return paths;
}

// (+)-fold of every accepting path weight.
template <DifferentiableSemiring S>
typename S::Value brute_weight(const Automaton<S>& a,
                               std::size_t max_paths = kDefaultMaxPaths) {
  const S& s = a.semiring();
  typename S::Value acc = s.zero();
  for (const auto& p : enumerate_paths(a, max_paths)) {
    acc = s.plus(acc, p.weight);
  }
  return acc;
}

enum class ParamKind { kInitial, kFinal, kArc };

// One real coordinate of one automaton parameter.
struct ParamSelector {
  ParamKind kind = ParamKind::kArc;
  std::size_t index = 0;
  int coord = 0;
};

template <DifferentiableSemiring S>
typename S::Value get_param(const Automaton<S>& a, const ParamSelector& p) {
  switch (p.kind) {
    case ParamKind::kInitial:
      return a.initial_weight(p.index);
    case ParamKind::kFinal:
      return a.final_weight(p.index);
    case ParamKind::kArc:
      break;
  }
  return a.arc(p.index).weight;
}

template <DifferentiableSemiring S>
void set_param(Automaton<S>& a, const ParamSelector& p,
               typename S::Value v) {
  switch (p.kind) {
    case ParamKind::kInitial:
      a.set_initial(p.index, std::move(v));
      return;
    case ParamKind::kFinal:
      a.set_final(p.index, std::move(v));
      return;
    case ParamKind::kArc:
      a.set_arc_weight(p.index, std::move(v));
      return;
  }
}

// The gradient coordinate that weight_vjp reports for a parameter.
template <DifferentiableSemiring S>
double gradient_coord(const AutomatonGradients<S>& g, const ParamSelector& p) {
  const auto& v = p.kind == ParamKind::kInitial ? g.initial
                  : p.kind == ParamKind::kFinal ? g.final
                                                : g.arcs;
  return S::cotangent_coord(v[p.index], p.coord);
}

namespace internal {

template <DifferentiableSemiring S>
typename S::Value weight_with(const Automaton<S>& a, const ParamSelector& p,
                              double x) {
  Automaton<S> copy = a;
  auto v = get_param(copy, p);
  S::set_tangent(v, p.coord, x);
  set_param(copy, p, v);
  return weight(copy).nu;
}

template <DifferentiableSemiring S>
double project(const typename S::Cotangent& seed, const typename S::Value& hi,
               const typename S::Value& lo, double denom) {
  double acc = 0.0;
  for (int m = 0; m < S::kTangentDim; ++m) {
    acc += S::cotangent_coord(seed, m) *
           (S::tangent(hi, m) - S::tangent(lo, m)) / denom;
  }
  return acc;
}

}  // namespace internal

// Cotangent with a one in coordinate k and zeros elsewhere.
template <DifferentiableSemiring S>
typename S::Cotangent basis_cotangent(const S& s, int k) {
  if constexpr (std::is_same_v<typename S::Cotangent, double>) {
    (void)s;
    (void)k;
    return 1.0;
  } else {
    auto c = s.zero_cotangent();
    (k == 0 ? c.first : c.second) = 1.0;
    return c;
  }
}

// Every (parameter, coordinate) of `a` whose coordinate is finite, i.e.
// every coordinate a finite difference can perturb.
template <DifferentiableSemiring S>
std::vector<ParamSelector> finite_parameters(const Automaton<S>& a) {
  std::vector<ParamSelector> out;
  auto add = [&](ParamKind kind, std::size_t index,
                 const typename S::Value& v) {
    for (int k = 0; k < S::kTangentDim; ++k) {
      if (std::isfinite(S::tangent(v, k))) out.push_back({kind, index, k});
    }
  };
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    add(ParamKind::kInitial, q, a.initial_weight(q));
  }
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    add(ParamKind::kFinal, q, a.final_weight(q));
  }
  for (std::size_t e = 0; e < a.num_arcs(); ++e) {
    add(ParamKind::kArc, e, a.arc(e).weight);
  }
  return out;
}

// Default step: 1e-6 * max(1, |theta|).
inline double default_fd_step(double theta) {
  return 1e-6 * std::max(1.0, std::abs(theta));
}

// Central difference of <seed, nu> with respect to one parameter
// coordinate. `a` must be topologically sorted. For min/max semirings a
// TieWarning is raised when the optimal path set changes within the step,
// since the difference quotient then mixes two subgradients.
template <DifferentiableSemiring S>
double fd_gradient(const Automaton<S>& a, const ParamSelector& p,
                   const typename S::Cotangent& seed, double h = 0.0) {
  const double theta = S::tangent(get_param(a, p), p.coord);
  if (!std::isfinite(theta)) {
    throw InvalidArgument("fd_gradient: parameter coordinate is not finite");
  }
  if (h <= 0.0) h = default_fd_step(theta);
  const auto hi = internal::weight_with(a, p, theta + h);
  const auto lo = internal::weight_with(a, p, theta - h);
  if constexpr (is_counted_semiring_v<S>) {
    const double w = std::max(h, 1e-9);
    const auto mid = weight(a).nu;
    const auto near_hi = internal::weight_with(a, p, theta + w);
    const auto near_lo = internal::weight_with(a, p, theta - w);
    if (near_hi.count != mid.count || near_lo.count != mid.count ||
        hi.count != mid.count || lo.count != mid.count) {
      throw TieWarning("fd_gradient: parameter sits at a min/max tie");
    }
  }
  return internal::project<S>(seed, hi, lo, 2.0 * h);
}

// One-sided difference (side = +1 forward, -1 backward), for coordinates
// next to a domain boundary.
template <DifferentiableSemiring S>
double fd_gradient_one_sided(const Automaton<S>& a, const ParamSelector& p,
                             const typename S::Cotangent& seed, int side,
                             double h = 0.0) {
  const double theta = S::tangent(get_param(a, p), p.coord);
  if (!std::isfinite(theta)) {
    throw InvalidArgument("fd_gradient: parameter coordinate is not finite");
  }
  if (h <= 0.0) h = default_fd_step(theta);
  const auto mid = weight(a).nu;
  const auto moved = internal::weight_with(a, p, theta + side * h);
  return side > 0 ? internal::project<S>(seed, moved, mid, h)
                  : internal::project<S>(seed, mid, moved, h);
}

// Averaged subgradient of nu for min/max semirings: the count-weighted share
// of optimal accepting paths that use the selected parameter.
template <typename Order>
double subgradient_reference(const Automaton<CountedSemiring<Order>>& a,
                             const ParamSelector& p,
                             std::size_t max_paths = kDefaultMaxPaths) {
  const auto paths = enumerate_paths(a, max_paths);
  if (paths.empty()) return 0.0;
  double best = paths.front().weight.value;
  for (const auto& path : paths) {
    if (Order::better(path.weight.value, best)) best = path.weight.value;
  }
  if (best == Order::kWorst) return 0.0;
  double total = 0.0;
  double through = 0.0;
  for (const auto& path : paths) {
    if (path.weight.value != best) continue;
    total += path.weight.count;
    bool uses = false;
    switch (p.kind) {
      case ParamKind::kInitial:
        uses = path.start == p.index;
        break;
      case ParamKind::kFinal:
        uses = path.end == p.index;
        break;
      case ParamKind::kArc:
        uses = std::find(path.arcs.begin(), path.arcs.end(), p.index) !=
               path.arcs.end();
        break;
    }
    if (uses) through += path.weight.count;
  }
  return total == 0.0 ? 0.0 : through / total;
}

struct OpCounter {
  std::size_t plus = 0;
  std::size_t times = 0;

  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

// Forwards everything to S and counts plus/times calls in an external
// counter.
template <DifferentiableSemiring S>
class Counting {
 public:
  using Value = typename S::Value;
  using Cotangent = typename S::Cotangent;
  static constexpr std::string_view kName = S::kName;
  static constexpr int kTangentDim = S::kTangentDim;

  Counting() = default;
  Counting(S inner, OpCounter* counter)
      : inner_(std::move(inner)), counter_(counter) {}

  friend bool operator==(const Counting& a, const Counting& b) {
    return a.inner_ == b.inner_;
  }

  const S& inner() const { return inner_; }

  Value zero() const { return inner_.zero(); }
  Value one() const { return inner_.one(); }
  bool is_zero(const Value& v) const { return inner_.is_zero(v); }
  Value plus(const Value& a, const Value& b) const {
    if (counter_) ++counter_->plus;
    return inner_.plus(a, b);
  }
  Value times(const Value& a, const Value& b) const {
    if (counter_) ++counter_->times;
    return inner_.times(a, b);
  }
  Cotangent pullback_through_sum(const Value& z, const Value& u,
                                 const Cotangent& d) const {
    return inner_.pullback_through_sum(z, u, d);
  }
  Cotangent vjp_mul_left(const Value& a, const Value& b,
                         const Cotangent& d) const {
    return inner_.vjp_mul_left(a, b, d);
  }
  Cotangent vjp_mul_right(const Value& a, const Value& b,
                          const Cotangent& d) const {
    return inner_.vjp_mul_right(a, b, d);
  }
  std::pair<Cotangent, Cotangent> direct_partials(BinaryOp op, const Value& a,
                                                  const Value& b,
                                                  const Cotangent& d) const {
    return inner_.direct_partials(op, a, b, d);
  }
  Cotangent zero_cotangent() const { return inner_.zero_cotangent(); }
  Cotangent unit_cotangent() const { return inner_.unit_cotangent(); }
  std::string format(const Value& v) const { return inner_.format(v); }
  std::string format_cotangent(const Cotangent& c) const {
    return inner_.format_cotangent(c);
  }
  Value parse(std::string_view t) const { return inner_.parse(t); }
  Cotangent parse_cotangent(std::string_view t) const {
    return inner_.parse_cotangent(t);
  }
  static double tangent(const Value& v, int k) { return S::tangent(v, k); }
  static void set_tangent(Value& v, int k, double x) {
    S::set_tangent(v, k, x);
  }
  static double cotangent_coord(const Cotangent& c, int k) {
    return S::cotangent_coord(c, k);
  }

 private:
  S inner_{};
  OpCounter* counter_ = nullptr;
};

template <DifferentiableSemiring S>
OpCounter count_dot_ops(const SemiringVector<S>& x,
                        const SemiringVector<S>& y) {
  OpCounter c;
  const Counting<S> cs(x.semiring(), &c);
  SemiringVector<Counting<S>> cx(
      cs, std::vector<typename S::Value>(x.begin(), x.end()));
  SemiringVector<Counting<S>> cy(
      cs, std::vector<typename S::Value>(y.begin(), y.end()));
  dot(cx, cy);
  return c;
}

struct WeightOpCounts {
  OpCounter shortest_distance;
  OpCounter final_dot;

  OpCounter total() const {
    return {shortest_distance.plus + final_dot.plus,
            shortest_distance.times + final_dot.times};
  }
};

// Counts the semiring operations of weight() on a sorted automaton. The
// (+)-merge of parallel arcs into T is matrix construction and is not
// included.
template <DifferentiableSemiring S>
WeightOpCounts count_weight_ops(const Automaton<S>& a) {
  const MatrixForm<S> m = build_matrix(a);
  WeightOpCounts counts;
  const Counting<S> sd(a.semiring(), &counts.shortest_distance);
  const Counting<S> fd(a.semiring(), &counts.final_dot);
  const auto& t = m.transitions;
  CsrMatrix<Counting<S>> ct(
      sd, t.dimension(),
      std::vector<std::size_t>(t.row_ptr().begin(), t.row_ptr().end()),
      std::vector<std::size_t>(t.cols().begin(), t.cols().end()),
      std::vector<typename S::Value>(t.values().begin(), t.values().end()),
      t.strictly_upper());
  SemiringVector<Counting<S>> alpha(
      sd, std::vector<typename S::Value>(m.alpha.begin(), m.alpha.end()));
  const auto d = shortest_distance(ct, alpha);
  SemiringVector<Counting<S>> cd(
      fd, std::vector<typename S::Value>(d.begin(), d.end()));
  SemiringVector<Counting<S>> omega(
      fd, std::vector<typename S::Value>(m.omega.begin(), m.omega.end()));
  dot(cd, omega);
  return counts;
}

}  // namespace fsad

#endif  // FSAD_ORACLE_HPP_
