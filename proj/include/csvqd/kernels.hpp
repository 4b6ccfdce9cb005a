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

// Amplitude-level kernels behind the statevector simulator.
//
// Basis index bit q holds qubit q. Every kernel exists twice: the OpenMP
// version in csvqd::kernels and a plain loop in csvqd::kernels::serial that
// tests and benchmarks use as the reference. Reductions are split into
// real/imaginary doubles; with a fixed thread count the parallel results are
// reproducible, across thread counts they agree to rounding (1e-12).

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace csvqd::kernels {

using Complex = std::complex<double>;
using Matrix2 = std::array<Complex, 4>;   // row-major
using Matrix4 = std::array<Complex, 16>;  // row-major, index bit0 = first qubit

/// Below this many amplitudes the OpenMP kernels run single-threaded.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

/// i^(phase + #Y) (-1)^popcount(b & z): P|b> = factor(b) |b ^ x>.
inline Complex pauli_factor(std::uint64_t b, std::uint64_t x, std::uint64_t z,
                            unsigned phase) {
  static constexpr Complex kPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const unsigned k = (phase + static_cast<unsigned>(__builtin_popcountll(x & z)) +
                      2u * static_cast<unsigned>(__builtin_popcountll(b & z) & 1)) &
                     3u;
  return kPow[k];
}

void apply_1q(std::span<Complex> psi, std::size_t q, const Matrix2& m);
void apply_2q(std::span<Complex> psi, std::size_t q0, std::size_t q1,
              const Matrix4& m);
void apply_x(std::span<Complex> psi, std::size_t q);
void apply_cnot(std::span<Complex> psi, std::size_t control, std::size_t target);
/// psi <- exp(-i angle/2 P) psi for Hermitian P = i^phase sigma(x, z).
void apply_pauli_rotation(std::span<Complex> psi, std::uint64_t x,
                          std::uint64_t z, unsigned phase, double angle);
/// out += coeff * P * in.
void accumulate_pauli(std::span<const Complex> in, std::span<Complex> out,
                      std::uint64_t x, std::uint64_t z, unsigned phase,
                      Complex coeff);
/// <bra| P |ket>.
Complex pauli_matrix_element(std::span<const Complex> bra,
                             std::span<const Complex> ket, std::uint64_t x,
                             std::uint64_t z, unsigned phase);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);
double norm_squared(std::span<const Complex> psi);

namespace serial {
void apply_1q(std::span<Complex> psi, std::size_t q, const Matrix2& m);
void apply_2q(std::span<Complex> psi, std::size_t q0, std::size_t q1,
              const Matrix4& m);
void apply_x(std::span<Complex> psi, std::size_t q);
void apply_cnot(std::span<Complex> psi, std::size_t control, std::size_t target);
void apply_pauli_rotation(std::span<Complex> psi, std::uint64_t x,
                          std::uint64_t z, unsigned phase, double angle);
void accumulate_pauli(std::span<const Complex> in, std::span<Complex> out,
                      std::uint64_t x, std::uint64_t z, unsigned phase,
                      Complex coeff);
Complex pauli_matrix_element(std::span<const Complex> bra,
                             std::span<const Complex> ket, std::uint64_t x,
                             std::uint64_t z, unsigned phase);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);
double norm_squared(std::span<const Complex> psi);
}  // namespace serial

}  // namespace csvqd::kernels
