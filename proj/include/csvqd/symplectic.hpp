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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csvqd/pauli.hpp"

namespace csvqd {

/// Incremental GF(2) span of Pauli strings in (x|z) coordinates.
///
/// Strings are inserted in order; accepted strings get consecutive indices
/// and `decompose` expresses any member of the span as a bit mask over those
/// indices. Phases are ignored here, callers recover them by multiplying.
class SymplecticBasis {
 public:
  explicit SymplecticBasis(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  /// Returns true and records `p` when it is independent of the span.
  bool insert(const PauliString& p);
  bool contains(const PauliString& p) const { return decompose(p).has_value(); }
  std::optional<std::uint64_t> decompose(const PauliString& p) const;
  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  struct Row {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    std::uint64_t combination = 0;
    int pivot = 0;  // 0..63 in x, 64..127 in z
  };
  std::size_t n_qubits_;
  std::vector<Row> rows_;
};

/// Independent, non-identity generators of the group of Pauli strings that
/// commute with every string in `terms`. Z-type generators are preferred:
/// the basis is row-reduced with x bits leading, so every generator that can
/// be chosen diagonal is.
std::vector<PauliString> commutant_generators(std::span<const PauliString> terms,
                                              std::size_t n_qubits);

/// Writes `target` as sign * prod_k generators[k] over the set bits of the
/// returned mask (ascending k). Generators must commute pairwise and be
/// Hermitian. Returns nullopt when `target` is outside their span.
struct Decomposition {
  std::uint64_t mask = 0;
  int sign = 1;
};
std::optional<Decomposition> decompose_product(
    const PauliString& target, std::span<const PauliString> generators,
    const SymplecticBasis& basis);

}  // namespace csvqd
