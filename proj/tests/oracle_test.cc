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
#include <vector>

#include "fsad/compare.hpp"
#include "fsad/errors.hpp"
#include "fsad/oracle.hpp"
#include "fsad/semirings.hpp"
#include "fsad/weight.hpp"
#include "test_support.hpp"

namespace fsad {
namespace {

using testing::Rng;

template <DifferentiableSemiring S>
Automaton<S> diamond(const S& s, typename S::Value a, typename S::Value b,
                     typename S::Value c, typename S::Value e) {
  Automaton<S> out(s, 4);
  out.add_arc(0, 1, 1, a);
  out.add_arc(0, 2, 2, b);
  out.add_arc(1, 3, 3, c);
  out.add_arc(2, 3, 4, e);
  out.set_initial(0, s.one());
  out.set_final(3, s.one());
  return out;
}

TEST(EnumeratePaths, Examples) {
  const LogSemiring l;
  Automaton<LogSemiring> chain(l, 2);
  chain.add_arc(0, 1, 1, -0.5);
  chain.set_initial(0, 0.0);
  chain.set_final(1, 0.0);
  EXPECT_EQ(enumerate_paths(chain).size(), 1u);
  EXPECT_EQ(brute_weight(chain), -0.5);

  const auto d = diamond(l, 0.1, 0.2, 0.3, 0.4);
  const auto paths = enumerate_paths(d);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].arcs, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(paths[1].arcs, (std::vector<std::size_t>{1, 3}));
  EXPECT_NEAR(brute_weight(d), std::log(std::exp(0.4) + std::exp(0.6)), 1e-15);

  Automaton<LogSemiring> single(l, 1);
  single.set_initial(0, 0.25);
  single.set_final(0, 0.5);
  const auto empty = enumerate_paths(single);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_TRUE(empty[0].arcs.empty());
  EXPECT_EQ(empty[0].weight, 0.75);

  Automaton<LogSemiring> none(l, 2);
  none.add_arc(0, 1, 1, 0.0);
  EXPECT_EQ(brute_weight(none), l.zero());
}

TEST(EnumeratePaths, PathsAreConnected) {
  Rng rng(2);
  const LogSemiring l;
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_automaton(l, rng, {10, 20});
    for (const auto& p : enumerate_paths(a)) {
      for (std::size_t i = 1; i < p.arcs.size(); ++i) {
        EXPECT_EQ(a.arc(p.arcs[i - 1]).dest, a.arc(p.arcs[i]).origin);
      }
    }
  }
}

TEST(EnumeratePaths, ExplosionIsReported) {
  const LogSemiring l;
  Automaton<LogSemiring> a(l, 21);
  for (std::size_t i = 0; i < 20; ++i) {
    a.add_arc(i, i + 1, 1, 0.0);
    a.add_arc(i, i + 1, 2, 0.0);
  }
  a.set_initial(0, 0.0);
  a.set_final(20, 0.0);
  EXPECT_EQ(count_accepting_paths(a), 1048576.0);
  EXPECT_THROW(enumerate_paths(a, 10000), PathExplosionError);
  // The dynamic program still works where enumeration cannot.
  EXPECT_NEAR(weight(a).nu, 20 * std::log(2.0), 1e-12);
}

TEST(FdGradient, Examples) {
  Automaton<RealSemiring> chain(RealSemiring{}, 2);
  chain.add_arc(0, 1, 1, 3.0);
  chain.set_initial(0, 1.0);
  chain.set_final(1, 1.0);
  EXPECT_NEAR(fd_gradient(chain, {ParamKind::kArc, 0, 0}, 1.0), 1.0, 1e-9);

  const auto d = diamond(LogSemiring{}, 0.0, 0.0, 0.0, 0.0);
  for (std::size_t e = 0; e < 4; ++e) {
    EXPECT_NEAR(fd_gradient(d, {ParamKind::kArc, e, 0}, 1.0), 0.5, 1e-9);
  }
}

TEST(FdGradient, StepSweepAgrees) {
  Rng rng(3);
  const LogKappaSemiring s(0.5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = testing::random_automaton(s, rng, {10, 30});
    for (const auto& p : finite_parameters(a)) {
      const double coarse = fd_gradient(a, p, 1.0, 1e-4);
      const double fine = fd_gradient(a, p, 1.0, 1e-6);
      EXPECT_TRUE(approx_equal(coarse, fine, 1e-4)) << coarse << " vs " << fine;
    }
  }
}

TEST(FdGradient, OneSidedNearTheBoundary) {
  // A tiny weight next to zero: both one-sided differences are defined and
  // agree with the central one.
  const RealSemiring r;
  Automaton<RealSemiring> a(r, 2);
  a.add_arc(0, 1, 1, 1e-12);
  a.set_initial(0, 2.0);
  a.set_final(1, 1.0);
  const ParamSelector p{ParamKind::kArc, 0, 0};
  EXPECT_NEAR(fd_gradient_one_sided(a, p, 1.0, +1), 2.0, 1e-9);
  EXPECT_NEAR(fd_gradient_one_sided(a, p, 1.0, -1), 2.0, 1e-9);
  EXPECT_NEAR(fd_gradient(a, p, 1.0), 2.0, 1e-9);
}

TEST(FdGradient, TropicalTieWarns) {
  const TropicalCountedSemiring t;
  const auto tie = diamond(t, {1, 1}, {1, 1}, {1, 1}, {1, 1});
  EXPECT_THROW(fd_gradient(tie, {ParamKind::kArc, 0, 0}, 1.0), TieWarning);
  const auto clear = diamond(t, {1, 1}, {2, 1}, {1, 1}, {1, 1});
  EXPECT_NEAR(fd_gradient(clear, {ParamKind::kArc, 0, 0}, 1.0), 1.0, 1e-9);
  EXPECT_NEAR(fd_gradient(clear, {ParamKind::kArc, 1, 0}, 1.0), 0.0, 1e-9);
}

TEST(SubgradientReference, Fixtures) {
  const TropicalCountedSemiring t;
  const auto unique = diamond(t, {1, 1}, {2, 1}, {1, 1}, {1, 1});
  EXPECT_EQ(subgradient_reference(unique, {ParamKind::kArc, 0, 0}), 1.0);
  EXPECT_EQ(subgradient_reference(unique, {ParamKind::kArc, 1, 0}), 0.0);

  const auto tied = diamond(t, {1, 1}, {1, 1}, {1, 1}, {1, 1});
  for (std::size_t e = 0; e < 4; ++e) {
    EXPECT_EQ(subgradient_reference(tied, {ParamKind::kArc, e, 0}), 0.5);
  }

  // Two tied paths 0 -> 1 -> {2, 3} -> 4 sharing the arc 0 -> 1.
  Automaton<TropicalCountedSemiring> shared(t, 5);
  shared.add_arc(0, 1, 1, {1, 1});
  shared.add_arc(1, 2, 1, {1, 1});
  shared.add_arc(1, 3, 1, {1, 1});
  shared.add_arc(2, 4, 1, {1, 1});
  shared.add_arc(3, 4, 1, {1, 1});
  shared.set_initial(0, t.one());
  shared.set_final(4, t.one());
  EXPECT_EQ(subgradient_reference(shared, {ParamKind::kArc, 0, 0}), 1.0);
  EXPECT_EQ(subgradient_reference(shared, {ParamKind::kArc, 1, 0}), 0.5);
  const auto [nu, g] = weight_and_gradients(shared);
  EXPECT_EQ(nu, (CountedValue{3, 2}));
  EXPECT_EQ(g.arcs, (std::vector<double>{1, 0.5, 0.5, 0.5, 0.5}));
}

TEST(CountOps, Dot) {
  const LogSemiring l;
  const SemiringVector<LogSemiring> x(l, std::vector<double>(8, 0.0));
  const auto c = count_dot_ops(x, x);
  EXPECT_EQ(c.times, 8u);
  EXPECT_EQ(c.plus, 7u);
}

TEST(CountOps, SameTopologySameCounts) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = testing::random_automaton(LogSemiring{}, rng);
    Automaton<TropicalCountedSemiring> b(TropicalCountedSemiring{}, a.num_states());
    for (const auto& arc : a.arcs()) {
      b.add_arc(arc.origin, arc.dest, arc.label, {arc.weight, 1});
    }
    for (const auto& [q, w] : a.initial()) b.set_initial(q, {w, 1});
    for (const auto& [q, w] : a.final()) b.set_final(q, {w, 1});
    EXPECT_EQ(count_weight_ops(a).shortest_distance,
              count_weight_ops(b).shortest_distance);
    EXPECT_EQ(count_weight_ops(a).final_dot, count_weight_ops(b).final_dot);
  }
}

}  // namespace
}  // namespace fsad
