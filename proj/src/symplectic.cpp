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

#include "csvqd/symplectic.hpp"

#include <bit>
#include <bitset>

#include "csvqd/errors.hpp"

namespace csvqd {
namespace {

int lowest_bit(std::uint64_t x, std::uint64_t z) {
  if (x != 0) return std::countr_zero(x);
  if (z != 0) return 64 + std::countr_zero(z);
  return -1;
}

bool has_bit(std::uint64_t x, std::uint64_t z, int bit) {
  return bit < 64 ? ((x >> bit) & 1u) : ((z >> (bit - 64)) & 1u);
}

}  // namespace

bool SymplecticBasis::insert(const PauliString& p) {
  if (p.n_qubits() != n_qubits_) {
    throw DimensionError("basis element has the wrong width");
  }
  if (rows_.size() >= 64) {
    throw RankError("symplectic basis is limited to 64 generators");
  }
  Row row{p.x(), p.z(), std::uint64_t{1} << rows_.size(), 0};
  for (const Row& r : rows_) {
    if (has_bit(row.x, row.z, r.pivot)) {
      row.x ^= r.x;
      row.z ^= r.z;
      row.combination ^= r.combination;
    }
  }
  row.pivot = lowest_bit(row.x, row.z);
  if (row.pivot < 0) return false;
  rows_.push_back(row);
  return true;
}

std::optional<std::uint64_t> SymplecticBasis::decompose(
    const PauliString& p) const {
  std::uint64_t x = p.x(), z = p.z(), combination = 0;
  for (const Row& r : rows_) {
    if (has_bit(x, z, r.pivot)) {
      x ^= r.x;
      z ^= r.z;
      combination ^= r.combination;
    }
  }
  if ((x | z) != 0) return std::nullopt;
  return combination;
}

std::vector<PauliString> commutant_generators(std::span<const PauliString> terms,
                                              std::size_t n_qubits) {
  // s commutes with t iff t.z . s.x + t.x . s.z = 0, so each term gives the
  // row (t.z | t.x) against the unknown (s.x | s.z).
  using Bits = std::bitset<128>;
  const std::size_t cols = 2 * n_qubits;
  std::vector<Bits> rows;
  rows.reserve(terms.size());
  for (const auto& t : terms) {
    Bits b;
    for (std::size_t q = 0; q < n_qubits; ++q) {
      if ((t.z() >> q) & 1u) b.set(q);
      if ((t.x() >> q) & 1u) b.set(n_qubits + q);
    }
    if (b.any()) rows.push_back(b);
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && !rows[sel].test(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i].test(c)) rows[i] ^= rows[rank];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Bits> kernel;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Bits v;
    v.set(f);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      if (rows[i].test(f)) v.set(pivot_col[i]);
    }
    kernel.push_back(v);
  }
  // Row-reduce the kernel with the x half leading so diagonal generators
  // surface wherever possible.
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < kernel.size(); ++c) {
    std::size_t sel = r;
    while (sel < kernel.size() && !kernel[sel].test(c)) ++sel;
    if (sel == kernel.size()) continue;
    std::swap(kernel[r], kernel[sel]);
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      if (i != r && kernel[i].test(c)) kernel[i] ^= kernel[r];
    }
    ++r;
  }
  std::vector<PauliString> out;
  out.reserve(kernel.size());
  for (const auto& v : kernel) {
    std::uint64_t x = 0, z = 0;
    for (std::size_t q = 0; q < n_qubits; ++q) {
      if (v.test(q)) x |= std::uint64_t{1} << q;
      if (v.test(n_qubits + q)) z |= std::uint64_t{1} << q;
    }
    out.emplace_back(n_qubits, x, z);
  }
  return out;
}

std::optional<Decomposition> decompose_product(
    const PauliString& target, std::span<const PauliString> generators,
    const SymplecticBasis& basis) {
  const auto mask = basis.decompose(target);
  if (!mask) return std::nullopt;
  PauliString product(target.n_qubits());
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if ((*mask >> k) & 1u) product = multiply(product, generators[k]);
  }
  // target = i^(t - p) * product
  const unsigned diff = (target.phase() + 4u - product.phase()) & 3u;
  if (diff & 1u) {
    throw ContractError("generators do not commute with the decomposed string");
  }
  return Decomposition{*mask, diff == 0 ? 1 : -1};
}

}  // namespace csvqd
