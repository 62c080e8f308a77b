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

// A deliberately naive reverse-mode engine over semiring scalars. Every
// (+) and (x) is recorded as a heap-allocated node and the backward pass
// replays the tape through the semiring's elementary partials. It is the
// reference the flattened vector-Jacobian products are checked against, and
// the baseline they are benchmarked against.

#ifndef FSAD_TAPE_HPP_
#define FSAD_TAPE_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fsad/automaton.hpp"
#include "fsad/errors.hpp"
#include "fsad/linalg.hpp"
#include "fsad/semiring.hpp"
#include "fsad/weight.hpp"

namespace fsad {

enum class TapeOp { kLeaf, kPlus, kTimes };

template <DifferentiableSemiring S>
struct TapeNode {
  TapeOp op = TapeOp::kLeaf;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  typename S::Value value{};
};

template <DifferentiableSemiring S>
class Tape {
 public:
  using Value = typename S::Value;
  using NodeId = std::size_t;

  explicit Tape(S semiring = S{}) : semiring_(std::move(semiring)) {}

  Tape(Tape&&) noexcept = default;
  Tape& operator=(Tape&&) noexcept = default;

  const S& semiring() const { return semiring_; }

  // A leaf registered as the next tracked input slot.
  NodeId input(Value v) {
    const NodeId id = push(TapeOp::kLeaf, 0, 0, std::move(v));
    tracked_.push_back(id);
    return id;
  }
  // A leaf that receives no gradient.
  NodeId constant(Value v) { return push(TapeOp::kLeaf, 0, 0, std::move(v)); }
  // Registers an existing node as an additional tracked slot.
  void track(NodeId id) { tracked_.push_back(id); }

  NodeId plus(NodeId a, NodeId b) {
    return push(TapeOp::kPlus, a, b,
                semiring_.plus(nodes_[a]->value, nodes_[b]->value));
  }
  NodeId times(NodeId a, NodeId b) {
    return push(TapeOp::kTimes, a, b,
                semiring_.times(nodes_[a]->value, nodes_[b]->value));
  }

  const Value& value(NodeId id) const { return nodes_[id]->value; }
  const TapeNode<S>& node(NodeId id) const { return *nodes_[id]; }
  std::size_t num_nodes() const { return nodes_.size(); }
  // One heap allocation per recorded node.
  std::size_t allocation_count() const { return nodes_.size(); }
  std::span<const NodeId> tracked() const { return tracked_; }

  void set_output(NodeId id) { output_ = id; }
  NodeId output() const { return output_; }

 private:
  NodeId push(TapeOp op, NodeId a, NodeId b, Value v) {
    auto node = std::make_unique<TapeNode<S>>();
    node->op = op;
    node->lhs = a;
    node->rhs = b;
    node->value = std::move(v);
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  S semiring_;
  std::vector<std::unique_ptr<TapeNode<S>>> nodes_;
  std::vector<NodeId> tracked_;
  NodeId output_ = 0;
};

template <DifferentiableSemiring S>
struct RecordedDot {
  typename S::Value z;
  Tape<S> tape;  // tracked slots: x_0..x_{K-1}, y_0..y_{K-1}
};

// Same accumulation order as dot(), so the primal is bit-identical.
template <DifferentiableSemiring S>
RecordedDot<S> record_dot(const SemiringVector<S>& x,
                          const SemiringVector<S>& y) {
  require_compatible(x, y);
  Tape<S> tape(x.semiring());
  const std::size_t k = x.size();
  for (std::size_t i = 0; i < k; ++i) tape.input(x[i]);
  for (std::size_t i = 0; i < k; ++i) tape.input(y[i]);
  if (k == 0) {
    tape.set_output(tape.constant(x.semiring().zero()));
  } else {
    std::size_t acc = tape.times(0, k);
    for (std::size_t i = 1; i < k; ++i) {
      acc = tape.plus(acc, tape.times(i, k + i));
    }
    tape.set_output(acc);
  }
  auto z = tape.value(tape.output());
  return {std::move(z), std::move(tape)};
}

template <DifferentiableSemiring S>
struct RecordedWeight {
  typename S::Value nu;
  Tape<S> tape;
  // Tracked slot layout: lambda (num_states), rho (num_states), arc weights
  // (num_arcs), then one slot per stored entry of T.
  std::size_t num_states = 0;
  std::size_t num_arcs = 0;
  std::size_t num_entries = 0;
};

// Records nu(A) for a topologically sorted automaton, including the
// (+)-merge of parallel arcs. Primal is bit-identical to weight().
template <DifferentiableSemiring S>
RecordedWeight<S> record_weight(const Automaton<S>& a) {
  const MatrixForm<S> m = build_matrix(a);
  const CsrMatrix<S>& t = m.transitions;
  const std::size_t n = a.num_states();
  Tape<S> tape(a.semiring());

  std::vector<std::size_t> d(n);
  std::vector<std::size_t> omega(n);
  for (std::size_t q = 0; q < n; ++q) d[q] = tape.input(m.alpha[q]);
  for (std::size_t q = 0; q < n; ++q) omega[q] = tape.input(m.omega[q]);
  std::vector<std::size_t> arc_node(a.num_arcs());
  for (std::size_t e = 0; e < a.num_arcs(); ++e) {
    arc_node[e] = tape.input(a.arc(e).weight);
  }

  std::vector<std::size_t> entry(t.num_entries());
  for (std::size_t k = 0; k < t.num_entries(); ++k) {
    std::size_t c = m.contributor_ptr[k];
    std::size_t acc = arc_node[m.contributor_arcs[c]];
    for (++c; c < m.contributor_ptr[k + 1]; ++c) {
      acc = tape.plus(acc, arc_node[m.contributor_arcs[c]]);
    }
    entry[k] = acc;
  }
  for (std::size_t k = 0; k < t.num_entries(); ++k) tape.track(entry[k]);

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = t.row_begin(j); k < t.row_end(j); ++k) {
      const std::size_t i = t.col(k);
      d[i] = tape.plus(d[i], tape.times(d[j], entry[k]));
    }
  }

  if (n == 0) {
    tape.set_output(tape.constant(a.semiring().zero()));
  } else {
    std::size_t acc = tape.times(d[0], omega[0]);
    for (std::size_t q = 1; q < n; ++q) {
      acc = tape.plus(acc, tape.times(d[q], omega[q]));
    }
    tape.set_output(acc);
  }
  auto nu = tape.value(tape.output());
  return {std::move(nu), std::move(tape), n, a.num_arcs(), t.num_entries()};
}

// Reverse sweep over the whole tape using the elementary partials of (+)
// and (x). Returns one cotangent per tracked slot.
template <DifferentiableSemiring S>
CotangentVector<S> backward(const Tape<S>& tape,
                            const typename S::Cotangent& delta_z) {
  if (tape.num_nodes() == 0) {
    throw InvalidArgument("backward: empty tape");
  }
  const S& s = tape.semiring();
  CotangentVector<S> adjoint(tape.num_nodes(), s.zero_cotangent());
  adjoint[tape.output()] = delta_z;
  for (std::size_t id = tape.output() + 1; id-- > 0;) {
    const TapeNode<S>& node = tape.node(id);
    if (node.op == TapeOp::kLeaf) continue;
    const BinaryOp op =
        node.op == TapeOp::kPlus ? BinaryOp::kPlus : BinaryOp::kTimes;
    auto [ga, gb] = s.direct_partials(op, tape.value(node.lhs),
                                      tape.value(node.rhs), adjoint[id]);
    adjoint[node.lhs] = adjoint[node.lhs] + ga;
    adjoint[node.rhs] = adjoint[node.rhs] + gb;
  }
  CotangentVector<S> out;
  out.reserve(tape.tracked().size());
  for (std::size_t id : tape.tracked()) out.push_back(adjoint[id]);
  return out;
}

// Splits the tracked-slot gradients of a record_weight tape.
template <DifferentiableSemiring S>
AutomatonGradients<S> unpack_weight_gradients(const RecordedWeight<S>& rec,
                                              const CotangentVector<S>& grads) {
  const std::size_t n = rec.num_states;
  const std::size_t e = rec.num_arcs;
  if (grads.size() != 2 * n + e + rec.num_entries) {
    throw InvalidArgument("unpack_weight_gradients: slot count mismatch");
  }
  auto at = [&](std::size_t first, std::size_t count) {
    return CotangentVector<S>(grads.begin() + first,
                              grads.begin() + first + count);
  };
  return {at(0, n), at(n, n), at(2 * n, e), at(2 * n + e, rec.num_entries)};
}

}  // namespace fsad

#endif  // FSAD_TAPE_HPP_
