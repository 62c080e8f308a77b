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

#ifndef FSAD_ERRORS_HPP_
#define FSAD_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsad {

// Operand shapes, lengths or semiring parameters disagree.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a morphism (e.g. log of a negative number).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The semiring does not provide the requested operation.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A matrix or automaton violates a structural precondition.
class StructureError : public std::runtime_error {
 public:
  StructureError(const std::string& what, std::size_t row, std::size_t col)
      : std::runtime_error(what), row_(row), col_(col) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class CyclicAutomatonError : public std::runtime_error {
 public:
  explicit CyclicAutomatonError(std::size_t state)
      : std::runtime_error("automaton is cyclic: state " +
                           std::to_string(state) + " lies on a cycle"),
        state_(state) {}

  std::size_t state() const { return state_; }

 private:
  std::size_t state_;
};

// Raised by the brute-force oracles when the path count exceeds the budget.
class PathExplosionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite differences are meaningless at a min/max tie.
class TieWarning : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fsad

#endif  // FSAD_ERRORS_HPP_
