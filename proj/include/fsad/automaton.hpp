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

#ifndef FSAD_AUTOMATON_HPP_
#define FSAD_AUTOMATON_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fsad/errors.hpp"
#include "fsad/semiring.hpp"

namespace fsad {

// Label 0 is epsilon. Labels are carried through I/O but never affect
// weights.
inline constexpr std::uint64_t kEpsilon = 0;

template <DifferentiableSemiring S>
struct Arc {
  std::size_t origin = 0;
  std::size_t dest = 0;
  std::uint64_t label = kEpsilon;
  typename S::Value weight{};

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Weighted acceptor: states 0..num_states()-1, labelled arcs, and sparse
// initial/final weight maps. States missing from a map carry zero().
template <DifferentiableSemiring S>
class Automaton {
 public:
  using Value = typename S::Value;
  using WeightMap = std::map<std::size_t, Value>;

  explicit Automaton(S semiring = S{}, std::size_t num_states = 0)
      : semiring_(std::move(semiring)), num_states_(num_states) {}

  const S& semiring() const { return semiring_; }
  std::size_t num_states() const { return num_states_; }
  std::size_t num_arcs() const { return arcs_.size(); }

  std::size_t add_state() { return num_states_++; }
  void ensure_states(std::size_t n) {
    if (n > num_states_) num_states_ = n;
  }

  std::size_t add_arc(std::size_t origin, std::size_t dest,
                      std::uint64_t label, Value weight) {
    check_state(origin);
    check_state(dest);
    arcs_.push_back({origin, dest, label, std::move(weight)});
    return arcs_.size() - 1;
  }

  std::span<const Arc<S>> arcs() const { return arcs_; }
  const Arc<S>& arc(std::size_t e) const { return arcs_[e]; }
  void set_arc_weight(std::size_t e, Value w) { arcs_[e].weight = std::move(w); }

  void set_initial(std::size_t q, Value w) {
    check_state(q);
    initial_[q] = std::move(w);
  }
  void set_final(std::size_t q, Value w) {
    check_state(q);
    final_[q] = std::move(w);
  }
  // (+)-merges with an existing entry.
  void add_initial(std::size_t q, const Value& w) {
    check_state(q);
    merge(initial_, q, w);
  }
  void add_final(std::size_t q, const Value& w) {
    check_state(q);
    merge(final_, q, w);
  }

  const WeightMap& initial() const { return initial_; }
  const WeightMap& final() const { return final_; }

  Value initial_weight(std::size_t q) const { return lookup(initial_, q); }
  Value final_weight(std::size_t q) const { return lookup(final_, q); }

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  void check_state(std::size_t q) const {
    if (q >= num_states_) {
      throw InvalidArgument("state " + std::to_string(q) +
                            " out of range (num_states = " +
                            std::to_string(num_states_) + ")");
    }
  }
  void merge(WeightMap& m, std::size_t q, const Value& w) {
    auto [it, inserted] = m.try_emplace(q, w);
    if (!inserted) it->second = semiring_.plus(it->second, w);
  }
  Value lookup(const WeightMap& m, std::size_t q) const {
    auto it = m.find(q);
    return it == m.end() ? semiring_.zero() : it->second;
  }

  S semiring_;
  std::size_t num_states_ = 0;
  std::vector<Arc<S>> arcs_;
  WeightMap initial_;
  WeightMap final_;
};

// Kahn's algorithm over (origin, dest) pairs, always emitting the smallest
// ready state. Returns the old-to-new permutation; throws
// CyclicAutomatonError naming a state on a cycle.
std::vector<std::size_t> topological_order(
    std::size_t num_states,
    std::span<const std::pair<std::size_t, std::size_t>> edges);

template <DifferentiableSemiring S>
bool is_topologically_sorted(const Automaton<S>& a) {
  for (const auto& arc : a.arcs()) {
    if (arc.dest <= arc.origin) return false;
  }
  return true;
}

template <DifferentiableSemiring S>
struct SortResult {
  Automaton<S> automaton;
  std::vector<std::size_t> permutation;  // old state -> new state
};

// Relabels states so that every arc goes from a lower to a higher index.
// Arc order is preserved, so arc e of the result is arc e of the input.
template <DifferentiableSemiring S>
SortResult<S> topological_sort(const Automaton<S>& a) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(a.num_arcs());
  for (const auto& arc : a.arcs()) edges.emplace_back(arc.origin, arc.dest);
  std::vector<std::size_t> perm = topological_order(a.num_states(), edges);

  Automaton<S> sorted(a.semiring(), a.num_states());
  for (const auto& arc : a.arcs()) {
    sorted.add_arc(perm[arc.origin], perm[arc.dest], arc.label, arc.weight);
  }
  for (const auto& [q, w] : a.initial()) sorted.set_initial(perm[q], w);
  for (const auto& [q, w] : a.final()) sorted.set_final(perm[q], w);
  return {std::move(sorted), std::move(perm)};
}

// Sequential composition: b's states are shifted by a.num_states() and
// every final state q of a is joined to every initial state r of b by an
// epsilon arc weighted rho_a(q) (x) lambda_b(r).
template <DifferentiableSemiring S>
Automaton<S> concat(const Automaton<S>& a, const Automaton<S>& b) {
  require_same_semiring(a.semiring(), b.semiring());
  const S& s = a.semiring();
  const std::size_t offset = a.num_states();
  Automaton<S> out(s, a.num_states() + b.num_states());
  for (const auto& arc : a.arcs()) {
    out.add_arc(arc.origin, arc.dest, arc.label, arc.weight);
  }
  for (const auto& arc : b.arcs()) {
    out.add_arc(arc.origin + offset, arc.dest + offset, arc.label, arc.weight);
  }
  for (const auto& [q, rho] : a.final()) {
    for (const auto& [r, lambda] : b.initial()) {
      out.add_arc(q, r + offset, kEpsilon, s.times(rho, lambda));
    }
  }
  for (const auto& [q, w] : a.initial()) out.set_initial(q, w);
  for (const auto& [q, w] : b.final()) out.set_final(q + offset, w);
  return out;
}

}  // namespace fsad

#endif  // FSAD_AUTOMATON_HPP_
