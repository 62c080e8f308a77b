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

#include <string>

#include "fsad/check.hpp"
#include "fsad/semirings.hpp"
#include "test_support.hpp"

namespace fsad {
namespace {

using testing::Rng;

// Log semiring whose right-hand product VJP is off by one percent.
class BrokenLogSemiring : public LogSemiring {
 public:
  static constexpr std::string_view kName = "broken-log";
  BrokenLogSemiring() : LogSemiring(1.0) {}
  Cotangent vjp_mul_right(Value a, Value b, Cotangent delta) const {
    return 1.01 * LogSemiring::vjp_mul_right(a, b, delta);
  }
  friend bool operator==(const BrokenLogSemiring&,
                         const BrokenLogSemiring&) = default;
};
static_assert(DifferentiableSemiring<BrokenLogSemiring>);

template <DifferentiableSemiring S>
Automaton<S> diamond(const S& s) {
  Automaton<S> a(s, 4);
  a.add_arc(0, 1, 1, -0.5);
  a.add_arc(0, 2, 2, -1.0);
  a.add_arc(1, 3, 3, -0.25);
  a.add_arc(2, 3, 4, -0.75);
  a.set_initial(0, 0.0);
  a.set_final(3, 0.0);
  return a;
}

const CheckItem* find(const CheckReport& r, const std::string& name) {
  for (const auto& item : r.items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

TEST(RunChecks, PassesOnCorrectSemirings) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto report = run_checks(testing::random_automaton(LogSemiring{}, rng, {10, 25}));
    EXPECT_TRUE(report.passed()) << format_report(report);
    EXPECT_EQ(report.items.size(), 4u);
  }
  const auto t = run_checks(testing::random_automaton(TropicalCountedSemiring{}, rng, {10, 25}));
  EXPECT_TRUE(t.passed()) << format_report(t);
  ASSERT_NE(find(t, "subgradient"), nullptr);
}

TEST(RunChecks, DetectsCorruptedGradient) {
  const auto report = run_checks(diamond(BrokenLogSemiring{}));
  EXPECT_FALSE(report.passed());
  const CheckItem* fd = find(report, "finite-difference");
  ASSERT_NE(fd, nullptr);
  EXPECT_EQ(fd->status, CheckStatus::kFail);
  // The tape uses the same broken primitive, so only the oracle notices.
  EXPECT_EQ(find(report, "fixed-point")->status, CheckStatus::kPass);
  EXPECT_EQ(find(report, "brute-weight")->status, CheckStatus::kPass);
  EXPECT_NE(format_report(report).find("FAIL  finite-difference"),
            std::string::npos);
}

TEST(RunChecks, SkipsEnumerationOnExplosion) {
  Automaton<LogSemiring> a(LogSemiring{}, 21);
  for (std::size_t i = 0; i < 20; ++i) {
    a.add_arc(i, i + 1, 1, -0.5);
    a.add_arc(i, i + 1, 2, -1.0);
  }
  a.set_initial(0, 0.0);
  a.set_final(20, 0.0);
  const auto report = run_checks(a);
  EXPECT_TRUE(report.passed()) << format_report(report);
  EXPECT_EQ(find(report, "brute-weight")->status, CheckStatus::kSkipped);
  EXPECT_EQ(find(report, "finite-difference")->status, CheckStatus::kPass);
  EXPECT_EQ(find(report, "tape")->status, CheckStatus::kPass);
}

}  // namespace
}  // namespace fsad
