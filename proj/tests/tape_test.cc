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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "fsad/automaton.hpp"
#include "fsad/compare.hpp"
#include "fsad/oracle.hpp"
#include "fsad/semirings.hpp"
#include "fsad/tape.hpp"
#include "fsad/weight.hpp"
#include "test_support.hpp"

namespace fsad {
namespace {

using testing::Rng;

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
bool bit_equal(const Pair& a, const Pair& b) {
  return bit_equal(a.first, b.first) && bit_equal(a.second, b.second);
}
bool bit_equal(const CountedValue& a, const CountedValue& b) {
  return bit_equal(a.value, b.value) && bit_equal(a.count, b.count);
}

TEST(RecordDot, RealExample) {
  const RealSemiring r;
  using V = SemiringVector<RealSemiring>;
  const auto rec = record_dot(V(r, {1, 2}), V(r, {3, 4}));
  EXPECT_EQ(rec.z, 11.0);
  EXPECT_EQ(rec.tape.num_nodes(), 7u);
  const auto g = backward(rec.tape, 1.0);
  EXPECT_EQ(g, (std::vector<double>{3, 4, 1, 2}));
}

TEST(RecordDot, SingleElementHasNoSum) {
  const RealSemiring r;
  using V = SemiringVector<RealSemiring>;
  const auto rec =
      record_dot(V(r, std::vector<double>{2}), V(r, std::vector<double>{5}));
  std::size_t plus = 0, times = 0;
  for (std::size_t i = 0; i < rec.tape.num_nodes(); ++i) {
    plus += rec.tape.node(i).op == TapeOp::kPlus;
    times += rec.tape.node(i).op == TapeOp::kTimes;
  }
  EXPECT_EQ(plus, 0u);
  EXPECT_EQ(times, 1u);
}

TEST(RecordDot, NodeCountAndBitEquality) {
  Rng rng(1);
  const LogSemiring l;
  {
    using V = SemiringVector<LogSemiring>;
    const V x(l, {0, 0});
    const auto rec = record_dot(x, x);
    EXPECT_TRUE(bit_equal(rec.z, dot(x, x)));
    EXPECT_NEAR(rec.z, std::log(2.0), 1e-15);
  }
  for (std::size_t k = 1; k <= 64; ++k) {
    SemiringVector<LogSemiring> x(l, k), y(l, k);
    for (std::size_t i = 0; i < k; ++i) {
      x[i] = testing::random_value(l, rng);
      y[i] = testing::random_value(l, rng);
    }
    const auto rec = record_dot(x, y);
    EXPECT_EQ(rec.tape.num_nodes(), 2 * k - 1 + 2 * k);
    EXPECT_TRUE(bit_equal(rec.z, dot(x, y)));
    for (std::size_t i = 0; i < rec.tape.num_nodes(); ++i) {
      const auto& n = rec.tape.node(i);
      if (n.op == TapeOp::kLeaf) continue;
      EXPECT_LT(n.lhs, i);
      EXPECT_LT(n.rhs, i);
    }
  }
}

TEST(RecordWeight, ChainAndEmptyAcceptance) {
  const LogSemiring l;
  Automaton<LogSemiring> a(l, 2);
  a.add_arc(0, 1, 1, -0.5);
  a.set_initial(0, 0.0);
  a.set_final(1, 0.0);
  const auto rec = record_weight(a);
  EXPECT_EQ(rec.nu, -0.5);
  EXPECT_GE(rec.tape.num_nodes(), 3u);

  Automaton<LogSemiring> none(l, 2);
  none.add_arc(0, 1, 1, -0.5);
  EXPECT_EQ(record_weight(none).nu, l.zero());
}

TEST(Backward, RejectsEmptyTape) {
  Tape<RealSemiring> t;
  EXPECT_THROW(backward(t, 1.0), InvalidArgument);
}

template <DifferentiableSemiring S>
void check_equivalence(const S& s, std::uint64_t seed, double tol) {
  Rng rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_automaton(s, rng);
    const auto m = build_matrix(a);
    const auto w = weight(m);
    const auto rec = record_weight(a);
    EXPECT_TRUE(bit_equal(rec.nu, w.nu)) << s.format(rec.nu) << " vs " << s.format(w.nu);
    for (int k = 0; k < S::kTangentDim; ++k) {
      const auto seed_k = basis_cotangent(s, k);
      const auto flat = weight_vjp(a, m, w.distances, w.nu, seed_k);
      const auto naive = unpack_weight_gradients(rec, backward(rec.tape, seed_k));
      auto same = [&](const CotangentVector<S>& x, const CotangentVector<S>& y) {
        ASSERT_EQ(x.size(), y.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          EXPECT_TRUE(cotangents_close<S>(x[i], y[i], tol))
              << S::kName << " " << s.format_cotangent(x[i]) << " vs "
              << s.format_cotangent(y[i]);
        }
      };
      same(flat.initial, naive.initial);
      same(flat.final, naive.final);
      same(flat.arcs, naive.arcs);
      same(flat.matrix, naive.matrix);
    }
  }
}

TEST(TapeEquivalence, Real) { check_equivalence(RealSemiring{}, 1, 1e-10); }
TEST(TapeEquivalence, Log) {
  for (double tau : {0.5, 1.0, 2.0}) check_equivalence(LogSemiring(tau), 2, 1e-10);
}
TEST(TapeEquivalence, LogKappa) {
  for (double kappa : {0.25, 0.5, 1.0}) {
    check_equivalence(LogKappaSemiring(kappa), 3, 1e-10);
  }
}
TEST(TapeEquivalence, LogExpectation) {
  check_equivalence(LogExpectationSemiring{}, 4, 1e-10);
}
// Random instances have ties with arbitrary multiplicities; the two sweeps
// factor the shares differently, so they agree to rounding only.
TEST(TapeEquivalence, Counted) {
  check_equivalence(TropicalCountedSemiring{}, 5, 1e-12);
  check_equivalence(ArcticCountedSemiring{}, 6, 1e-12);
}

// Stacked tied diamonds: every share is a power of two and both sweeps are
// exact.
TEST(TapeEquivalence, DyadicTiesAreBitExact) {
  const TropicalCountedSemiring t;
  for (int layers = 1; layers <= 6; ++layers) {
    Automaton<TropicalCountedSemiring> a(t, 3 * layers + 1);
    for (int i = 0; i < layers; ++i) {
      const std::size_t q = 3 * i;
      a.add_arc(q, q + 1, 1, {1, 1});
      a.add_arc(q, q + 2, 2, {0.5, 1});
      a.add_arc(q + 1, q + 3, 3, {1, 1});
      a.add_arc(q + 2, q + 3, 4, {1.5, 1});
    }
    a.set_initial(0, t.one());
    a.set_final(3 * layers, t.one());
    const auto [nu, flat] = weight_and_gradients(a);
    const auto rec = record_weight(a);
    const auto naive = unpack_weight_gradients(rec, backward(rec.tape, 1.0));
    EXPECT_EQ(nu.count, std::ldexp(1.0, layers));
    EXPECT_EQ(flat.arcs, naive.arcs);
    EXPECT_EQ(flat.initial, naive.initial);
    EXPECT_EQ(flat.final, naive.final);
    for (double g : flat.arcs) EXPECT_EQ(g, 0.5);
  }
}

TEST(RecordWeight, TapeGrowsAffinelyUnderConcatenation) {
  const LogSemiring l;
  Automaton<LogSemiring> base(l, 3);
  base.add_arc(0, 1, 1, -0.5);
  base.add_arc(0, 2, 2, -1.0);
  base.add_arc(1, 2, 3, -0.25);
  base.set_initial(0, 0.0);
  base.set_final(2, 0.0);
  std::vector<std::size_t> nodes;
  auto a = base;
  for (int n = 1; n <= 6; ++n) {
    nodes.push_back(record_weight(a).tape.num_nodes());
    a = concat(a, base);
  }
  const std::size_t step = nodes[1] - nodes[0];
  EXPECT_GT(step, 0u);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    EXPECT_EQ(nodes[i] - nodes[i - 1], step);
  }
}

TEST(RecordWeight, NodeCountIsOpsPlusLeaves) {
  Rng rng(7);
  const LogSemiring l;
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_automaton(l, rng);
    const auto rec = record_weight(a);
    const auto ops = count_weight_ops(a);
    // Leaves: alpha, omega and arcs; merging parallel arcs adds one plus
    // node per extra contributor.
    const std::size_t leaves = 2 * a.num_states() + a.num_arcs();
    const std::size_t merges = a.num_arcs() - rec.num_entries;
    EXPECT_EQ(rec.tape.num_nodes(),
              leaves + merges + ops.total().plus + ops.total().times);
  }
}

}  // namespace
}  // namespace fsad
