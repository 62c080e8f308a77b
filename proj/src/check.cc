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

#include "fsad/check.hpp"

#include <algorithm>

namespace fsad {

std::string format_report(const CheckReport& report) {
  std::string out;
  for (const auto& item : report.items) {
    const char* status = item.status == CheckStatus::kPass   ? "PASS"
                         : item.status == CheckStatus::kFail ? "FAIL"
                                                             : "SKIP";
    std::string name = item.name;
    name.resize(std::max<std::size_t>(name.size(), 18), ' ');
    out += std::string(status) + "  " + name + "  " + item.detail + "\n";
  }
  return out;
}

}  // namespace fsad
