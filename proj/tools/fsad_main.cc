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

// fsad: weights, gradients, self-checks and benchmarks for acyclic weighted
// automata stored in the line-oriented text format.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsad/commands.hpp"

namespace {

void add_semiring_flags(CLI::App* cmd, fsad::SemiringChoice& choice) {
  cmd->add_option("--semiring", choice.name,
                  "real, log, logk, logexp, tropical or arctic")
      ->capture_default_str();
  cmd->add_option("--tau", choice.params.tau, "log semiring temperature")
      ->capture_default_str();
  cmd->add_option("--kappa", choice.params.kappa, "logk deformation")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weights and gradients of acyclic weighted automata"};
  app.require_subcommand(1);

  std::string fsa;
  std::string out_path;
  std::string seed;
  std::vector<int> repeats{1, 2, 4, 8};
  int runs = 5;
  fsad::SemiringChoice choice;

  auto* weight = app.add_subcommand("weight", "print the automaton weight");
  weight->add_option("--fsa", fsa, "automaton file")->required();
  add_semiring_flags(weight, choice);

  auto* grad = app.add_subcommand(
      "grad", "print the automaton with each weight replaced by its gradient");
  grad->add_option("--fsa", fsa, "automaton file")->required();
  add_semiring_flags(grad, choice);
  auto* seed_opt =
      grad->add_option("--seed", seed, "output cotangent (default: unit)");

  auto* check = app.add_subcommand(
      "check", "compare gradients and weights against reference oracles");
  check->add_option("--fsa", fsa, "automaton file")->required();
  add_semiring_flags(check, choice);

  auto* bench = app.add_subcommand(
      "bench", "time forward, flattened backward and tape backward passes");
  bench->add_option("--base-fsa", fsa, "automaton to concatenate")->required();
  add_semiring_flags(bench, choice);
  bench->add_option("--repeats", repeats, "concatenation counts, e.g. 1,2,4")
      ->delimiter(',');
  bench->add_option("--runs", runs, "timed runs per measurement (>= 3)")
      ->capture_default_str();
  bench->add_option("--out", out_path, "CSV output path")->required();

  auto* sort = app.add_subcommand("sort", "renumber states topologically");
  sort->add_option("--fsa", fsa, "automaton file")->required();
  sort->add_option("--out", out_path, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fsad::kExitUsage;
  }

  if (*weight) return fsad::cmd_weight(fsa, choice, std::cout, std::cerr);
  if (*grad) {
    std::optional<std::string> s;
    if (*seed_opt) s = seed;
    return fsad::cmd_grad(fsa, choice, s, std::cout, std::cerr);
  }
  if (*check) return fsad::cmd_check(fsa, choice, std::cout, std::cerr);
  if (*bench) {
    return fsad::cmd_bench(fsa, choice, repeats, runs, out_path, std::cerr);
  }
  return fsad::cmd_sort(fsa, out_path, std::cerr);
}
