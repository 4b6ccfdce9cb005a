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

#include "csvqd/kernels.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace csvqd::kernels {
namespace {

using Index = std::int64_t;

// Spreads i into an index with a zero inserted at bit `q`.
inline std::uint64_t insert_zero(std::uint64_t i, std::size_t q) {
  const std::uint64_t low = i & ((std::uint64_t{1} << q) - 1);
  return ((i >> q) << (q + 1)) | low;
}

inline std::uint64_t insert_two_zeros(std::uint64_t i, std::size_t lo,
                                      std::size_t hi) {
  return insert_zero(insert_zero(i, lo), hi);
}

inline bool parallel(std::size_t n) { return n >= kParallelThreshold; }

}  // namespace

void apply_1q(std::span<Complex> psi, std::size_t q, const Matrix2& m) {
  const Index half = static_cast<Index>(psi.size() / 2);
  const std::uint64_t bit = std::uint64_t{1} << q;
#pragma omp parallel for schedule(static) if (parallel(psi.size()))
  for (Index i = 0; i < half; ++i) {
    const std::uint64_t b0 = insert_zero(static_cast<std::uint64_t>(i), q);
    const std::uint64_t b1 = b0 | bit;
    const Complex a0 = psi[b0], a1 = psi[b1];
    psi[b0] = m[0] * a0 + m[1] * a1;
    psi[b1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_2q(std::span<Complex> psi, std::size_t q0, std::size_t q1,
              const Matrix4& m) {
  const Index quarter = static_cast<Index>(psi.size() / 4);
  const std::size_t lo = q0 < q1 ? q0 : q1, hi = q0 < q1 ? q1 : q0;
  const std::uint64_t m0 = std::uint64_t{1} << q0, m1 = std::uint64_t{1} << q1;
#pragma omp parallel for schedule(static) if (parallel(psi.size()))
  for (Index i = 0; i < quarter; ++i) {
    const std::uint64_t base = insert_two_zeros(static_cast<std::uint64_t>(i), lo, hi);
    const std::uint64_t idx[4] = {base, base | m0, base | m1, base | m0 | m1};
    Complex in[4], out[4];
    for (int k = 0; k < 4; ++k) in[k] = psi[idx[k]];
    for (int r = 0; r < 4; ++r) {
      out[r] = m[4 * r] * in[0] + m[4 * r + 1] * in[1] + m[4 * r + 2] * in[2] +
               m[4 * r + 3] * in[3];
    }
    for (int k = 0; k < 4; ++k) psi[idx[k]] = out[k];
  }
}

void apply_x(std::span<Complex> psi, std::size_t q) {
  const Index half = static_cast<Index>(psi.size() / 2);
  const std::uint64_t bit = std::uint64_t{1} << q;
#pragma omp parallel for schedule(static) if (parallel(psi.size()))
  for (Index i = 0; i < half; ++i) {
    const std::uint64_t b0 = insert_zero(static_cast<std::uint64_t>(i), q);
    std::swap(psi[b0], psi[b0 | bit]);
  }
}

void apply_cnot(std::span<Complex> psi, std::size_t control, std::size_t target) {
  const Index quarter = static_cast<Index>(psi.size() / 4);
  const std::size_t lo = control < target ? control : target;
  const std::size_t hi = control < target ? target : control;
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
#pragma omp parallel for schedule(static) if (parallel(psi.size()))
  for (Index i = 0; i < quarter; ++i) {
    const std::uint64_t b = insert_two_zeros(static_cast<std::uint64_t>(i), lo, hi) | cbit;
    std::swap(psi[b], psi[b | tbit]);
  }
}

void apply_pauli_rotation(std::span<Complex> psi, std::uint64_t x,
                          std::uint64_t z, unsigned phase, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const Complex minus_is(0.0, -s);
  if (x == 0) {
    const Index n = static_cast<Index>(psi.size());
#pragma omp parallel for schedule(static) if (parallel(psi.size()))
    for (Index b = 0; b < n; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      psi[ub] *= c + minus_is * pauli_factor(ub, 0, z, phase);
    }
    return;
  }
  const std::size_t h = 63 - static_cast<std::size_t>(std::countl_zero(x));
  const Index half = static_cast<Index>(psi.size() / 2);
#pragma omp parallel for schedule(static) if (parallel(psi.size()))
  for (Index i = 0; i < half; ++i) {
    const std::uint64_t b0 = insert_zero(static_cast<std::uint64_t>(i), h);
    const std::uint64_t b1 = b0 ^ x;
    const Complex a0 = psi[b0], a1 = psi[b1];
    psi[b0] = c * a0 + minus_is * pauli_factor(b1, x, z, phase) * a1;
    psi[b1] = c * a1 + minus_is * pauli_factor(b0, x, z, phase) * a0;
  }
}

void accumulate_pauli(std::span<const Complex> in, std::span<Complex> out,
                      std::uint64_t x, std::uint64_t z, unsigned phase,
                      Complex coeff) {
  const Index n = static_cast<Index>(in.size());
#pragma omp parallel for schedule(static) if (parallel(in.size()))
  for (Index b = 0; b < n; ++b) {
    // Gather form so each output slot has a single writer.
    const std::uint64_t src = static_cast<std::uint64_t>(b) ^ x;
    out[static_cast<std::uint64_t>(b)] += coeff * pauli_factor(src, x, z, phase) * in[src];
  }
}

Complex pauli_matrix_element(std::span<const Complex> bra,
                             std::span<const Complex> ket, std::uint64_t x,
                             std::uint64_t z, unsigned phase) {
  const Index n = static_cast<Index>(ket.size());
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (parallel(ket.size()))
  for (Index b = 0; b < n; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const Complex v = std::conj(bra[ub ^ x]) * pauli_factor(ub, x, z, phase) * ket[ub];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  const Index n = static_cast<Index>(a.size());
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (parallel(a.size()))
  for (Index i = 0; i < n; ++i) {
    const Complex v = std::conj(a[i]) * b[i];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

double norm_squared(std::span<const Complex> psi) {
  const Index n = static_cast<Index>(psi.size());
  double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total) if (parallel(psi.size()))
  for (Index i = 0; i < n; ++i) total += std::norm(psi[i]);
  return total;
}

namespace serial {

void apply_1q(std::span<Complex> psi, std::size_t q, const Matrix2& m) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    if (b & bit) continue;
    const Complex a0 = psi[b], a1 = psi[b | bit];
    psi[b] = m[0] * a0 + m[1] * a1;
    psi[b | bit] = m[2] * a0 + m[3] * a1;
  }
}

void apply_2q(std::span<Complex> psi, std::size_t q0, std::size_t q1,
              const Matrix4& m) {
  const std::uint64_t m0 = std::uint64_t{1} << q0, m1 = std::uint64_t{1} << q1;
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    if (b & (m0 | m1)) continue;
    const std::uint64_t idx[4] = {b, b | m0, b | m1, b | m0 | m1};
    Complex in[4];
    for (int k = 0; k < 4; ++k) in[k] = psi[idx[k]];
    for (int r = 0; r < 4; ++r) {
      Complex acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += m[4 * r + k] * in[k];
      psi[idx[r]] = acc;
    }
  }
}

void apply_x(std::span<Complex> psi, std::size_t q) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    if (!(b & bit)) std::swap(psi[b], psi[b | bit]);
  }
}

void apply_cnot(std::span<Complex> psi, std::size_t control, std::size_t target) {
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    if ((b & cbit) && !(b & tbit)) std::swap(psi[b], psi[b | tbit]);
  }
}

void apply_pauli_rotation(std::span<Complex> psi, std::uint64_t x,
                          std::uint64_t z, unsigned phase, double angle) {
  // Direct form: psi' = cos psi - i sin P psi.
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  std::vector<Complex> p_psi(psi.size());
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    p_psi[b ^ x] = pauli_factor(b, x, z, phase) * psi[b];
  }
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    psi[b] = c * psi[b] + Complex(0.0, -s) * p_psi[b];
  }
}

void accumulate_pauli(std::span<const Complex> in, std::span<Complex> out,
                      std::uint64_t x, std::uint64_t z, unsigned phase,
                      Complex coeff) {
  for (std::uint64_t b = 0; b < in.size(); ++b) {
    out[b ^ x] += coeff * pauli_factor(b, x, z, phase) * in[b];
  }
}

Complex pauli_matrix_element(std::span<const Complex> bra,
                             std::span<const Complex> ket, std::uint64_t x,
                             std::uint64_t z, unsigned phase) {
  Complex total = 0.0;
  for (std::uint64_t b = 0; b < ket.size(); ++b) {
    total += std::conj(bra[b ^ x]) * pauli_factor(b, x, z, phase) * ket[b];
  }
  return total;
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  Complex total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::conj(a[i]) * b[i];
  return total;
}

double norm_squared(std::span<const Complex> psi) {
  double total = 0.0;
  for (const auto& a : psi) total += std::norm(a);
  return total;
}

}  // namespace serial
}  // namespace csvqd::kernels
