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

#include "fsad/alloc_counter.hpp"

#include <atomic>

namespace fsad {
namespace {
std::atomic<std::uint64_t> g_allocations{0};
std::atomic<bool> g_installed{false};
}  // namespace

std::uint64_t heap_allocation_count() {
  return g_allocations.load(std::memory_order_relaxed);
}

bool heap_allocation_hook_installed() {
  return g_installed.load(std::memory_order_relaxed);
}

namespace internal {

void note_heap_allocation() {
  g_allocations.fetch_add(1, std::memory_order_relaxed);
}

void mark_heap_allocation_hook_installed() {
  g_installed.store(true, std::memory_order_relaxed);
}

}  // namespace internal
}  // namespace fsad
