// Copyright 2026 The decmilp Authors.
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

#ifndef DECMILP_ERRORS_HPP_
#define DECMILP_ERRORS_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace decmilp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A parsed model that violates one of the probability invariants.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Requested enumeration is larger than the configured limit.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::uint64_t requested,
                std::uint64_t limit)
      : Error(what + ": " + std::to_string(requested) + " exceeds limit " +
              std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

// A policy vector or tree that does not describe a valid policy.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Internal solver failure: numerical breakdown, cycling, inconsistent
// extraction. Always a bug or a pathological instance, never user input.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace decmilp

#endif  // DECMILP_ERRORS_HPP_
