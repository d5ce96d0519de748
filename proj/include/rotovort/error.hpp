// Copyright 2026 The rotovort Authors
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

#ifndef ROTOVORT_ERROR_HPP
#define ROTOVORT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rotovort {

enum class ErrorKind {
  Argument,     // precondition on an input violated
  Range,        // value outside the domain the method can handle
  Solver,       // root finder / minimizer could not proceed
  Numeric,      // NaN or Inf encountered
  Unsupported,  // geometry or configuration not handled by an operation
  Degenerate,   // empty lattice, empty support, ...
  Unbounded,    // functional not bounded below
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::Argument, what);
}

}  // namespace rotovort

#endif  // ROTOVORT_ERROR_HPP
