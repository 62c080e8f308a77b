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

// Weight of an acyclic automaton, nu(A) = alpha^T T* omega, and its
// vector-Jacobian product.
//
// For a topologically sorted automaton the transition matrix T is strictly
// upper triangular, so the single-source distances d^T = alpha^T T* satisfy
//
//   d_i = alpha_i (+) ( (+)_{j<i} d_j (x) T_ji )
//
// and can be computed by one forward sweep over the rows of T. Every d_i is
// a (+)-sum of the same shape as a dot product, so its derivative with
// respect to each term is given directly by the semiring's
// pullback_through_sum primitive, and the backward pass is one reverse sweep
// over the same rows with no tape.

#ifndef FSAD_WEIGHT_HPP_
#define FSAD_WEIGHT_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fsad/automaton.hpp"
#include "fsad/errors.hpp"
#include "fsad/linalg.hpp"
#include "fsad/semiring.hpp"

namespace fsad {

// T, alpha and omega extracted from an automaton, plus the arcs merged into
// each stored entry of T: arcs contributor_arcs[contributor_ptr[k] ..
// contributor_ptr[k+1]) make up entry k, in input order.
template <DifferentiableSemiring S>
struct MatrixForm {
  CsrMatrix<S> transitions;
  SemiringVector<S> alpha;
  SemiringVector<S> omega;
  std::vector<std::size_t> contributor_ptr;
  std::vector<std::size_t> contributor_arcs;
};

// Requires a topologically sorted automaton. T_ij is the (+)-sum of all arcs
// i -> j regardless of label. Unlike csr_from_triplets, an entry whose sum
// is zero() is kept, so every arc owns a stored entry and receives a
// gradient.
template <DifferentiableSemiring S>
MatrixForm<S> build_matrix(const Automaton<S>& a) {
  const auto arcs = a.arcs();
  for (const auto& arc : arcs) {
    if (arc.dest <= arc.origin) {
      throw StructureError("automaton is not topologically sorted: arc " +
                               std::to_string(arc.origin) + " -> " +
                               std::to_string(arc.dest),
                           arc.origin, arc.dest);
    }
  }
  const S& s = a.semiring();
  auto assembly = internal::assemble_csr(
      s, a.num_states(), arcs.size(),
      [&](std::size_t e) { return arcs[e].origin; },
      [&](std::size_t e) { return arcs[e].dest; },
      [&](std::size_t e) { return arcs[e].weight; },
      /*require_strict_upper=*/true, /*drop_zeros=*/false);

  SemiringVector<S> alpha(s, a.num_states());
  SemiringVector<S> omega(s, a.num_states());
  for (const auto& [q, w] : a.initial()) alpha[q] = w;
  for (const auto& [q, w] : a.final()) omega[q] = w;
  return {std::move(assembly.matrix), std::move(alpha), std::move(omega),
          std::move(assembly.group_ptr), std::move(assembly.order)};
}

// Single-source distances by the push schedule: d starts as alpha and each
// stored entry (j, i), visited in row order, performs d_i (+)= d_j (x) T_ji.
// Exactly one (x) and one (+) per stored entry.
template <DifferentiableSemiring S>
SemiringVector<S> shortest_distance(const CsrMatrix<S>& t,
                                    const SemiringVector<S>& alpha) {
  require_same_semiring(t.semiring(), alpha.semiring());
  if (t.dimension() != alpha.size()) {
    throw InvalidArgument("shortest_distance: matrix dimension " +
                          std::to_string(t.dimension()) +
                          " does not match alpha length " +
                          std::to_string(alpha.size()));
  }
  if (!t.strictly_upper()) {
    throw InvalidArgument("shortest_distance: matrix is not strictly upper");
  }
  const S& s = t.semiring();
  SemiringVector<S> d = alpha;
  for (std::size_t j = 0; j < t.dimension(); ++j) {
    for (std::size_t k = t.row_begin(j); k < t.row_end(j); ++k) {
      const std::size_t i = t.col(k);
      d[i] = s.plus(d[i], s.times(d[j], t.value(k)));
    }
  }
  return d;
}

template <DifferentiableSemiring S>
struct WeightResult {
  typename S::Value nu;
  SemiringVector<S> distances;
};

template <DifferentiableSemiring S>
WeightResult<S> weight(const MatrixForm<S>& m) {
  SemiringVector<S> d = shortest_distance(m.transitions, m.alpha);
  auto nu = dot(d, m.omega);
  return {std::move(nu), std::move(d)};
}

template <DifferentiableSemiring S>
WeightResult<S> weight(const Automaton<S>& a) {
  return weight(build_matrix(a));
}

template <DifferentiableSemiring S>
struct AutomatonGradients {
  CotangentVector<S> initial;  // d nu / d lambda(q), all q
  CotangentVector<S> final;    // d nu / d rho(q), all q
  CotangentVector<S> arcs;     // aligned with Automaton::arcs()
  CotangentVector<S> matrix;   // aligned with stored entries of T
};

// Heap buffers allocated by one weight_vjp call: four outputs and the
// distance-adjoint scratch. Independent of the automaton size.
inline constexpr std::size_t kWeightVjpBuffers = 5;

// Vector-Jacobian product of nu(A). `m`, `d` and `nu` must come from
// build_matrix / weight on `a`. Allocates the four output buffers and one
// scratch buffer for the distance adjoints; nothing else.
template <DifferentiableSemiring S>
AutomatonGradients<S> weight_vjp(const Automaton<S>& a, const MatrixForm<S>& m,
                                 const SemiringVector<S>& d,
                                 const typename S::Value& nu,
                                 const typename S::Cotangent& delta_z) {
  const S& s = a.semiring();
  const CsrMatrix<S>& t = m.transitions;
  const std::size_t n = a.num_states();
  require_same_semiring(s, t.semiring());
  require_same_semiring(s, d.semiring());
  if (t.dimension() != n || d.size() != n || m.alpha.size() != n ||
      m.omega.size() != n || m.contributor_arcs.size() != a.num_arcs() ||
      m.contributor_ptr.size() != t.num_entries() + 1) {
    throw InvalidArgument("weight_vjp: inputs do not match the automaton");
  }

  AutomatonGradients<S> g;
  g.initial.assign(n, s.zero_cotangent());
  g.final.assign(n, s.zero_cotangent());
  g.arcs.assign(a.num_arcs(), s.zero_cotangent());
  g.matrix.assign(t.num_entries(), s.zero_cotangent());
  CotangentVector<S> grad_d(n, s.zero_cotangent());

  for (std::size_t i = n; i-- > 0;) {
    const auto& di = d[i];
    // nu = (+)_i d_i (x) omega_i
    const auto u = s.times(di, m.omega[i]);
    const auto du = s.pullback_through_sum(nu, u, delta_z);
    auto gdi = s.vjp_mul_left(di, m.omega[i], du);
    g.final[i] = s.vjp_mul_right(di, m.omega[i], du);
    // d_j = alpha_j (+) ... (+) d_i (x) T_ij (+) ...; grad_d[j] is final
    // because every successor j of i is larger than i.
    for (std::size_t k = t.row_begin(i); k < t.row_end(i); ++k) {
      const std::size_t j = t.col(k);
      const auto v = s.times(di, t.value(k));
      const auto p = s.pullback_through_sum(d[j], v, grad_d[j]);
      gdi = gdi + s.vjp_mul_left(di, t.value(k), p);
      g.matrix[k] = s.vjp_mul_right(di, t.value(k), p);
    }
    grad_d[i] = gdi;
    g.initial[i] = s.pullback_through_sum(di, m.alpha[i], gdi);
  }

  // T_ij = (+)_e w(e) over the arcs merged into the entry.
  for (std::size_t k = 0; k < t.num_entries(); ++k) {
    for (std::size_t c = m.contributor_ptr[k]; c < m.contributor_ptr[k + 1];
         ++c) {
      const std::size_t e = m.contributor_arcs[c];
      g.arcs[e] =
          s.pullback_through_sum(t.value(k), a.arc(e).weight, g.matrix[k]);
    }
  }
  return g;
}

// Convenience: forward and backward in one call with a unit seed.
template <DifferentiableSemiring S>
std::pair<typename S::Value, AutomatonGradients<S>> weight_and_gradients(
    const Automaton<S>& a) {
  const MatrixForm<S> m = build_matrix(a);
  WeightResult<S> r = weight(m);
  auto g = weight_vjp(a, m, r.distances, r.nu, a.semiring().unit_cotangent());
  return {r.nu, std::move(g)};
}

}  // namespace fsad

#endif  // FSAD_WEIGHT_HPP_
