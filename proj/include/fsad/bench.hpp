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

// Runtime and heap-allocation comparison of the forward pass, the flattened
// backward pass and the tape backward pass over iterated concatenations of a
// base automaton.

#ifndef FSAD_BENCH_HPP_
#define FSAD_BENCH_HPP_

#include <chrono>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fsad/alloc_counter.hpp"
#include "fsad/automaton.hpp"
#include "fsad/errors.hpp"
#include "fsad/tape.hpp"
#include "fsad/weight.hpp"

namespace fsad {

struct BenchRow {
  std::size_t k = 0;  // |Q| + |E|
  double forward_s = 0;
  double rule_s = 0;
  double naive_s = 0;
  std::size_t forward_allocs = 0;
  std::size_t rule_allocs = 0;
  std::size_t naive_allocs = 0;
};

struct BenchOptions {
  int runs = 5;
  // Each timed sample repeats the measured call until it lasts at least
  // this long; the reported time is per call.
  double min_sample_s = 10e-3;
};

inline constexpr const char* kBenchCsvHeader =
    "K,forward_s,rule_s,naive_s,forward_allocs,rule_allocs,naive_allocs";

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

// Throws InvalidArgument unless repeats is non-empty, positive and strictly
// increasing.
void validate_repeats(std::span<const int> repeats);

namespace internal {

double median(std::vector<double> xs);

// Median over opt.runs samples, after one warm-up call, of the per-call wall
// time of fn.
template <typename Fn>
double time_median(Fn&& fn, const BenchOptions& opt) {
  using Clock = std::chrono::steady_clock;
  auto start = Clock::now();
  fn();
  const double warm = std::chrono::duration<double>(Clock::now() - start).count();
  std::size_t reps = 1;
  if (warm > 0 && warm < opt.min_sample_s) {
    reps = static_cast<std::size_t>(opt.min_sample_s / warm) + 1;
  }
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(opt.runs));
  for (int r = 0; r < opt.runs; ++r) {
    start = Clock::now();
    for (std::size_t i = 0; i < reps; ++i) fn();
    samples.push_back(
        std::chrono::duration<double>(Clock::now() - start).count() /
        static_cast<double>(reps));
  }
  return median(std::move(samples));
}

// Heap allocations made by one call of fn when the counting allocator is
// linked in, otherwise fallback.
template <typename Fn>
std::size_t count_allocations(Fn&& fn, std::size_t fallback) {
  if (!heap_allocation_hook_installed()) {
    fn();
    return fallback;
  }
  const std::size_t before = heap_allocation_count();
  fn();
  return heap_allocation_count() - before;
}

template <typename T>
inline void keep(const T& value) {
  asm volatile("" : : "g"(&value) : "memory");
}

}  // namespace internal

template <DifferentiableSemiring S>
BenchRow bench_one(const Automaton<S>& a, const BenchOptions& opt) {
  const S& s = a.semiring();
  const auto seed = s.unit_cotangent();
  const MatrixForm<S> m = build_matrix(a);
  const WeightResult<S> w = weight(m);

  BenchRow row;
  row.k = a.num_states() + a.num_arcs();
  row.forward_s = internal::time_median(
      [&] { internal::keep(weight(m)); }, opt);
  row.rule_s = internal::time_median(
      [&] { internal::keep(weight_vjp(a, m, w.distances, w.nu, seed)); },
      opt);
  row.naive_s = internal::time_median(
      [&] {
        const auto rec = record_weight(a);
        internal::keep(backward(rec.tape, seed));
      },
      opt);

  // Without the counting allocator, fall back to buffer counts: the forward
  // pass copies alpha once, the flattened backward pass allocates a fixed
  // set of buffers and the tape allocates one node per operation.
  const std::size_t tape_nodes = record_weight(a).tape.num_nodes();
  row.forward_allocs =
      internal::count_allocations([&] { internal::keep(weight(m)); }, 1);
  row.rule_allocs = internal::count_allocations(
      [&] { internal::keep(weight_vjp(a, m, w.distances, w.nu, seed)); },
      kWeightVjpBuffers);
  row.naive_allocs = internal::count_allocations(
      [&] {
        const auto rec = record_weight(a);
        internal::keep(backward(rec.tape, seed));
      },
      tape_nodes);
  return row;
}

// One row per n in repeats, measured on concat^n(base). The base automaton
// is sorted first if needed; concatenation preserves sortedness.
template <DifferentiableSemiring S>
std::vector<BenchRow> run_benchmark(const Automaton<S>& base,
                                    std::span<const int> repeats,
                                    const BenchOptions& opt = {}) {
  validate_repeats(repeats);
  if (opt.runs < 1) throw InvalidArgument("runs must be positive");
  const Automaton<S> unit = is_topologically_sorted(base)
                                ? base
                                : topological_sort(base).automaton;
  std::vector<BenchRow> rows;
  Automaton<S> current = unit;
  int have = 1;
  for (const int n : repeats) {
    for (; have < n; ++have) current = concat(current, unit);
    rows.push_back(bench_one(current, opt));
  }
  return rows;
}

}  // namespace fsad

#endif  // FSAD_BENCH_HPP_
