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

// Optional global heap-allocation counter. The counter only moves in
// executables that link the fsad_alloc_hook object library, which replaces
// the global operator new.

#ifndef FSAD_ALLOC_COUNTER_HPP_
#define FSAD_ALLOC_COUNTER_HPP_

#include <cstdint>

namespace fsad {

std::uint64_t heap_allocation_count();
bool heap_allocation_hook_installed();

namespace internal {
void note_heap_allocation();
void mark_heap_allocation_hook_installed();
}  // namespace internal

}  // namespace fsad

#endif  // FSAD_ALLOC_COUNTER_HPP_
