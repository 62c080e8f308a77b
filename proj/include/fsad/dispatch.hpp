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

#ifndef FSAD_DISPATCH_HPP_
#define FSAD_DISPATCH_HPP_

#include <optional>
#include <string_view>
#include <utility>

#include "fsad/semirings.hpp"

namespace fsad {

enum class SemiringKind {
  kReal,
  kLog,
  kLogKappa,
  kLogExpectation,
  kTropical,
  kArctic,
};

// Accepts the command-line names: real, log, logk, logexp, tropical, arctic.
std::optional<SemiringKind> parse_semiring_kind(std::string_view name);
std::string_view semiring_kind_name(SemiringKind kind);

// Calls fn with a semiring object of the requested kind and returns its
// result. Every branch must return the same type.
template <typename Fn>
decltype(auto) with_semiring(SemiringKind kind, const SemiringParams& params,
                             Fn&& fn) {
  switch (kind) {
    case SemiringKind::kReal:
      return std::forward<Fn>(fn)(RealSemiring{});
    case SemiringKind::kLog:
      return std::forward<Fn>(fn)(LogSemiring{params.tau});
    case SemiringKind::kLogKappa:
      return std::forward<Fn>(fn)(LogKappaSemiring{params.kappa});
    case SemiringKind::kLogExpectation:
      return std::forward<Fn>(fn)(LogExpectationSemiring{});
    case SemiringKind::kTropical:
      return std::forward<Fn>(fn)(TropicalCountedSemiring{});
    case SemiringKind::kArctic:
      break;
  }
  return std::forward<Fn>(fn)(ArcticCountedSemiring{});
}

}  // namespace fsad

#endif  // FSAD_DISPATCH_HPP_
