// Copyright 2026 The csvqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace csvqd {

/// Operands act on different numbers of qubits, or an index is out of range.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Input data (fixture files, config bundles) failed validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of operators that must be independent is not.
class RankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested count (qubits, states) cannot be realized.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A configured size cap (dense matrices, statevector width) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver gave up; carries the best value it reached.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_value)
      : std::runtime_error(what), best_value_(best_value) {}
  double best_value() const noexcept { return best_value_; }

 private:
  double best_value_;
};

}  // namespace csvqd
