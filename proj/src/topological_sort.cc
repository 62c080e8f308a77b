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

#include <functional>
#include <queue>

#include "fsad/automaton.hpp"

namespace fsad {

std::vector<std::size_t> topological_order(
    std::size_t num_states,
    std::span<const std::pair<std::size_t, std::size_t>> edges) {
  std::vector<std::size_t> in_degree(num_states, 0);
  std::vector<std::size_t> succ_ptr(num_states + 1, 0);
  for (const auto& [o, d] : edges) {
    ++in_degree[d];
    ++succ_ptr[o + 1];
  }
  for (std::size_t q = 0; q < num_states; ++q) succ_ptr[q + 1] += succ_ptr[q];
  std::vector<std::size_t> succ(edges.size());
  {
    std::vector<std::size_t> fill(succ_ptr.begin(), succ_ptr.end() - 1);
    for (const auto& [o, d] : edges) succ[fill[o]++] = d;
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>,
                      std::greater<std::size_t>>
      ready;
  for (std::size_t q = 0; q < num_states; ++q) {
    if (in_degree[q] == 0) ready.push(q);
  }

  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> perm(num_states, kUnassigned);
  std::size_t next = 0;
  while (!ready.empty()) {
    const std::size_t q = ready.top();
    ready.pop();
    perm[q] = next++;
    for (std::size_t k = succ_ptr[q]; k < succ_ptr[q + 1]; ++k) {
      if (--in_degree[succ[k]] == 0) ready.push(succ[k]);
    }
  }
  if (next == num_states) return perm;

  // Every unemitted state has an unemitted predecessor; walking predecessors
  // must revisit a state, and the first revisited one lies on a cycle.
  std::vector<std::size_t> pred(num_states, kUnassigned);
  for (const auto& [o, d] : edges) {
    if (perm[o] == kUnassigned && perm[d] == kUnassigned) pred[d] = o;
  }
  std::size_t q = 0;
  while (perm[q] != kUnassigned) ++q;
  std::vector<bool> seen(num_states, false);
  while (!seen[q]) {
    seen[q] = true;
    q = pred[q];
  }
  throw CyclicAutomatonError(q);
}

}  // namespace fsad
