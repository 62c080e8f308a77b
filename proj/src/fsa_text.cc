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

#include "fsad/fsa_text.hpp"

#include <algorithm>
#include <charconv>

namespace fsad {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::uint64_t parse_index(std::string_view token, std::size_t line,
                          const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" +
                               std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::vector<FsaRecord> parse_fsa_records(std::string_view text) {
  std::vector<FsaRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    FsaRecord r;
    r.line = line_no;
    if (fields[0] == "A") {
      if (fields.size() != 5) {
        throw ParseError(line_no, "arc record needs 'A src dst label weight'");
      }
      r.kind = RecordKind::kArc;
      r.src = parse_index(fields[1], line_no, "source state");
      r.dst = parse_index(fields[2], line_no, "destination state");
      r.label = parse_index(fields[3], line_no, "label");
      r.weight = std::string(fields[4]);
    } else if (fields[0] == "I" || fields[0] == "F") {
      if (fields.size() != 3) {
        throw ParseError(line_no, std::string(fields[0]) +
                                      " record needs '" +
                                      std::string(fields[0]) +
                                      " state weight'");
      }
      r.kind = fields[0] == "I" ? RecordKind::kInitial : RecordKind::kFinal;
      r.src = parse_index(fields[1], line_no, "state");
      r.weight = std::string(fields[2]);
    } else {
      throw ParseError(line_no, "unknown record type '" +
                                    std::string(fields[0]) + "'");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::size_t inferred_num_states(const std::vector<FsaRecord>& records) {
  std::size_t n = 0;
  for (const auto& r : records) {
    n = std::max(n, r.src + 1);
    if (r.kind == RecordKind::kArc) n = std::max(n, r.dst + 1);
  }
  return n;
}

std::string format_record(const FsaRecord& r) {
  switch (r.kind) {
    case RecordKind::kArc:
      return "A " + std::to_string(r.src) + " " + std::to_string(r.dst) + " " +
             std::to_string(r.label) + " " + r.weight;
    case RecordKind::kInitial:
      return "I " + std::to_string(r.src) + " " + r.weight;
    case RecordKind::kFinal:
      break;
  }
  return "F " + std::to_string(r.src) + " " + r.weight;
}

}  // namespace fsad
