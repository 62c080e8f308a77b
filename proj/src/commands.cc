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

#include "fsad/commands.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "fsad/automaton.hpp"
#include "fsad/bench.hpp"
#include "fsad/check.hpp"
#include "fsad/dispatch.hpp"
#include "fsad/errors.hpp"
#include "fsad/fsa_text.hpp"
#include "fsad/weight.hpp"

namespace fsad {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path);
}

SemiringKind resolve(const SemiringChoice& choice) {
  const auto kind = parse_semiring_kind(choice.name);
  if (!kind) {
    throw UsageError("unknown semiring '" + choice.name +
                     "' (expected real, log, logk, logexp, tropical or arctic)");
  }
  return *kind;
}

// Runs body and maps library exceptions to exit codes.
template <typename Body>
int guarded(const std::string& path, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CyclicAutomatonError& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

template <DifferentiableSemiring S>
Automaton<S> sorted(const Automaton<S>& a) {
  if (is_topologically_sorted(a)) return a;
  return topological_sort(a).automaton;
}

// Gradients of the sorted copy expressed on the original state ids.
template <DifferentiableSemiring S>
AutomatonGradients<S> gradients_in_input_order(const Automaton<S>& a,
                                               const typename S::Cotangent& seed) {
  const SortResult<S> sr = topological_sort(a);
  const MatrixForm<S> m = build_matrix(sr.automaton);
  const WeightResult<S> w = weight(m);
  AutomatonGradients<S> g = weight_vjp(sr.automaton, m, w.distances, w.nu, seed);
  AutomatonGradients<S> out;
  out.arcs = std::move(g.arcs);
  out.matrix = std::move(g.matrix);
  out.initial.resize(a.num_states());
  out.final.resize(a.num_states());
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    out.initial[q] = g.initial[sr.permutation[q]];
    out.final[q] = g.final[sr.permutation[q]];
  }
  return out;
}

}  // namespace

int cmd_weight(const std::string& fsa_path, const SemiringChoice& semiring,
               std::ostream& out, std::ostream& err) {
  return guarded(fsa_path, err, [&] {
    const SemiringKind kind = resolve(semiring);
    const std::string text = read_file(fsa_path);
    return with_semiring(kind, semiring.params, [&](const auto& s) {
      const auto doc = parse_fsa(s, text);
      const auto w = weight(sorted(doc.automaton));
      out << s.format(w.nu) << "\n";
      return kExitOk;
    });
  });
}

int cmd_grad(const std::string& fsa_path, const SemiringChoice& semiring,
             const std::optional<std::string>& seed, std::ostream& out,
             std::ostream& err) {
  return guarded(fsa_path, err, [&] {
    const SemiringKind kind = resolve(semiring);
    const std::string text = read_file(fsa_path);
    return with_semiring(kind, semiring.params, [&](const auto& s) {
      auto delta = s.unit_cotangent();
      if (seed) {
        try {
          delta = s.parse_cotangent(*seed);
        } catch (const InvalidArgument& e) {
          throw UsageError(std::string("bad --seed: ") + e.what());
        }
      }
      const auto doc = parse_fsa(s, text);
      const auto g = gradients_in_input_order(doc.automaton, delta);
      out << format_gradient_document(doc, g);
      return kExitOk;
    });
  });
}

int cmd_check(const std::string& fsa_path, const SemiringChoice& semiring,
              std::ostream& out, std::ostream& err) {
  return guarded(fsa_path, err, [&] {
    const SemiringKind kind = resolve(semiring);
    const std::string text = read_file(fsa_path);
    return with_semiring(kind, semiring.params, [&](const auto& s) {
      const auto doc = parse_fsa(s, text);
      const CheckReport report = run_checks(sorted(doc.automaton));
      out << format_report(report);
      for (const auto& item : report.items) {
        if (item.status == CheckStatus::kSkipped) {
          err << "warning: " << item.name << " skipped: " << item.detail
              << "\n";
        }
      }
      return report.passed() ? kExitOk : kExitFailure;
    });
  });
}

int cmd_bench(const std::string& base_fsa_path, const SemiringChoice& semiring,
              const std::vector<int>& repeats, int runs,
              const std::string& out_path, std::ostream& err) {
  return guarded(base_fsa_path, err, [&] {
    const SemiringKind kind = resolve(semiring);
    validate_repeats(repeats);
    if (runs < 3) throw UsageError("--runs must be at least 3");
    const std::string text = read_file(base_fsa_path);
    return with_semiring(kind, semiring.params, [&](const auto& s) {
      const auto doc = parse_fsa(s, text);
      BenchOptions opt;
      opt.runs = runs;
      const auto rows = run_benchmark(doc.automaton, repeats, opt);
      std::ostringstream csv;
      write_bench_csv(csv, rows);
      write_file(out_path, csv.str());
      return kExitOk;
    });
  });
}

int cmd_sort(const std::string& fsa_path, const std::string& out_path,
             std::ostream& err) {
  return guarded(fsa_path, err, [&] {
    std::vector<FsaRecord> records = parse_fsa_records(read_file(fsa_path));
    const std::size_t n = inferred_num_states(records);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& r : records) {
      if (r.kind == RecordKind::kArc) edges.emplace_back(r.src, r.dst);
    }
    const std::vector<std::size_t> perm = topological_order(n, edges);
    std::string text;
    for (auto& r : records) {
      r.src = perm[r.src];
      if (r.kind == RecordKind::kArc) r.dst = perm[r.dst];
      text += format_record(r) + "\n";
    }
    write_file(out_path, text);
    for (std::size_t q = 0; q < n; ++q) err << q << " " << perm[q] << "\n";
    return kExitOk;
  });
}

}  // namespace fsad
