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

#include <string>

#include "fsad/dispatch.hpp"
#include "fsad/semirings.hpp"

namespace fsad {
namespace internal {

double parse_scalar_weight(std::string_view text, std::string_view semiring) {
  if (auto v = parse_double(text)) return *v;
  throw InvalidArgument("malformed " + std::string(semiring) + " weight '" +
                        std::string(text) + "'");
}

Pair parse_pair_weight(std::string_view text, std::string_view semiring) {
  if (auto p = parse_pair(text)) return {p->first, p->second};
  throw InvalidArgument("malformed " + std::string(semiring) + " weight '" +
                        std::string(text) + "', expected 'v1,v2'");
}

}  // namespace internal

std::optional<SemiringKind> parse_semiring_kind(std::string_view name) {
  if (name == "real") return SemiringKind::kReal;
  if (name == "log") return SemiringKind::kLog;
  if (name == "logk") return SemiringKind::kLogKappa;
  if (name == "logexp") return SemiringKind::kLogExpectation;
  if (name == "tropical") return SemiringKind::kTropical;
  if (name == "arctic") return SemiringKind::kArctic;
  return std::nullopt;
}

std::string_view semiring_kind_name(SemiringKind kind) {
  switch (kind) {
    case SemiringKind::kReal:
      return RealSemiring::kName;
    case SemiringKind::kLog:
      return LogSemiring::kName;
    case SemiringKind::kLogKappa:
      return LogKappaSemiring::kName;
    case SemiringKind::kLogExpectation:
      return LogExpectationSemiring::kName;
    case SemiringKind::kTropical:
      return TropicalCountedSemiring::kName;
    case SemiringKind::kArctic:
      break;
  }
  return ArcticCountedSemiring::kName;
}

}  // namespace fsad
