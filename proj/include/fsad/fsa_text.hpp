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

// Plain-text automaton format, one record per line:
//
//   A <src> <dst> <label> <weight>    arc
//   I <state> <weight>                initial weight
//   F <state> <weight>                final weight
//
// '#' starts a comment. States and labels are non-negative decimal
// integers; the number of states is one more than the largest state
// mentioned. Scalar weights are decimal floats ("inf" / "-inf" allowed),
// pair weights are written "v1,v2" without spaces. Repeated I or F lines for
// one state are (+)-merged.

#ifndef FSAD_FSA_TEXT_HPP_
#define FSAD_FSA_TEXT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fsad/automaton.hpp"
#include "fsad/errors.hpp"
#include "fsad/semiring.hpp"
#include "fsad/weight.hpp"

namespace fsad {

enum class RecordKind { kArc, kInitial, kFinal };

// One non-comment line, with the weight kept as its raw token.
struct FsaRecord {
  RecordKind kind = RecordKind::kArc;
  std::size_t line = 0;  // 1-based
  std::size_t src = 0;   // arc origin, or the I/F state
  std::size_t dst = 0;
  std::uint64_t label = 0;
  std::string weight;
};

// Throws ParseError carrying the offending line number.
std::vector<FsaRecord> parse_fsa_records(std::string_view text);

// 1 + largest state mentioned, or 0 for an empty file.
std::size_t inferred_num_states(const std::vector<FsaRecord>& records);

// Canonical single-space rendering of one record.
std::string format_record(const FsaRecord& r);

template <DifferentiableSemiring S>
struct FsaDocument {
  Automaton<S> automaton;
  std::vector<FsaRecord> records;  // input order
};

template <DifferentiableSemiring S>
FsaDocument<S> parse_fsa(const S& semiring, std::string_view text) {
  std::vector<FsaRecord> records = parse_fsa_records(text);
  Automaton<S> a(semiring, inferred_num_states(records));
  for (const auto& r : records) {
    typename S::Value w;
    try {
      w = semiring.parse(r.weight);
    } catch (const InvalidArgument& e) {
      throw ParseError(r.line, e.what());
    }
    switch (r.kind) {
      case RecordKind::kArc:
        a.add_arc(r.src, r.dst, r.label, w);
        break;
      case RecordKind::kInitial:
        a.add_initial(r.src, w);
        break;
      case RecordKind::kFinal:
        a.add_final(r.src, w);
        break;
    }
  }
  return {std::move(a), std::move(records)};
}

// Arcs in order, then I lines and F lines by increasing state.
template <DifferentiableSemiring S>
std::string serialize_fsa(const Automaton<S>& a) {
  const S& s = a.semiring();
  std::string out;
  for (const auto& arc : a.arcs()) {
    out += "A " + std::to_string(arc.origin) + " " + std::to_string(arc.dest) +
           " " + std::to_string(arc.label) + " " + s.format(arc.weight) + "\n";
  }
  for (const auto& [q, w] : a.initial()) {
    out += "I " + std::to_string(q) + " " + s.format(w) + "\n";
  }
  for (const auto& [q, w] : a.final()) {
    out += "F " + std::to_string(q) + " " + s.format(w) + "\n";
  }
  return out;
}

// Re-emits the document's records in input order with every weight replaced
// by the gradient of nu with respect to it. `g` refers to doc.automaton's
// states and arcs. A repeated I/F line gets its own share of the merged
// weight's gradient.
template <DifferentiableSemiring S>
std::string format_gradient_document(const FsaDocument<S>& doc,
                                     const AutomatonGradients<S>& g) {
  const S& s = doc.automaton.semiring();
  std::string out;
  std::size_t arc = 0;
  for (const auto& r : doc.records) {
    FsaRecord copy = r;
    const auto w = s.parse(r.weight);
    switch (r.kind) {
      case RecordKind::kArc:
        copy.weight = s.format_cotangent(g.arcs[arc++]);
        break;
      case RecordKind::kInitial:
        copy.weight = s.format_cotangent(s.pullback_through_sum(
            doc.automaton.initial_weight(r.src), w, g.initial[r.src]));
        break;
      case RecordKind::kFinal:
        copy.weight = s.format_cotangent(s.pullback_through_sum(
            doc.automaton.final_weight(r.src), w, g.final[r.src]));
        break;
    }
    out += format_record(copy) + "\n";
  }
  return out;
}

}  // namespace fsad

#endif  // FSAD_FSA_TEXT_HPP_
