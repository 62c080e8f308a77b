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

// The fsad subcommands as library functions. Each returns the process exit
// code: 0 on success, 1 when a check or benchmark fails or the input is
// cyclic, 2 on usage and parse errors.

#ifndef FSAD_COMMANDS_HPP_
#define FSAD_COMMANDS_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fsad/semiring.hpp"

namespace fsad {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct SemiringChoice {
  std::string name = "real";
  SemiringParams params;
};

int cmd_weight(const std::string& fsa_path, const SemiringChoice& semiring,
               std::ostream& out, std::ostream& err);

// seed is a cotangent in the semiring's cotangent syntax; the unit
// cotangent when absent.
int cmd_grad(const std::string& fsa_path, const SemiringChoice& semiring,
             const std::optional<std::string>& seed, std::ostream& out,
             std::ostream& err);

int cmd_check(const std::string& fsa_path, const SemiringChoice& semiring,
              std::ostream& out, std::ostream& err);

int cmd_bench(const std::string& base_fsa_path, const SemiringChoice& semiring,
              const std::vector<int>& repeats, int runs,
              const std::string& out_path, std::ostream& err);

// Works on records, so weights are copied verbatim and no semiring is
// needed. Writes "old new" state pairs to err.
int cmd_sort(const std::string& fsa_path, const std::string& out_path,
             std::ostream& err);

}  // namespace fsad

#endif  // FSAD_COMMANDS_HPP_
