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

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace csvqd {

using Complex = std::complex<double>;

/// Widest register a PauliString can describe (one bit per qubit per mask).
inline constexpr std::size_t kMaxQubits = 64;

/// Coefficients below this magnitude are dropped after non-Clifford algebra.
inline constexpr double kPruneTolerance = 1e-12;

/// A Pauli string i^phase * (sigma_0 (x) sigma_1 (x) ... ) in symplectic form.
///
/// Qubit q contributes bit q of `x()` and `z()`. The single-qubit operator is
/// I for (0,0), X for (1,0), Z for (0,1) and Y for (1,1), where Y = i X Z.
/// The phase is an exponent of i kept modulo 4, so the bit masks alone never
/// carry a sign.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);
  PauliString(std::size_t n_qubits, std::uint64_t x, std::uint64_t z,
              unsigned phase = 0);

  /// Parses "XIZY" (qubit 0 leftmost) with an optional "+", "-", "i", "-i"
  /// or "+i" prefix.
  static PauliString parse(std::string_view text);
  static PauliString single(std::size_t n_qubits, std::size_t qubit, char axis);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t x() const noexcept { return x_; }
  std::uint64_t z() const noexcept { return z_; }
  /// Exponent k of the global factor i^k, in [0, 4).
  unsigned phase() const noexcept { return phase_; }
  Complex phase_factor() const noexcept;

  /// 'I', 'X', 'Y' or 'Z'.
  char at(std::size_t qubit) const;
  std::size_t weight() const noexcept;
  std::uint64_t support() const noexcept { return x_ | z_; }

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }
  /// True when the phase is +1 or -1.
  bool is_hermitian() const noexcept { return (phase_ & 1u) == 0; }

  PauliString without_phase() const noexcept;
  PauliString with_phase(unsigned phase) const noexcept;
  PauliString negated() const noexcept { return with_phase(phase_ + 2); }

  /// Letters only, qubit 0 leftmost.
  std::string letters() const;
  /// Letters prefixed by the phase ("+", "-", "+i", "-i").
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  unsigned phase_ = 0;
};

/// Canonical order: lexicographic on the z bits, then the x bits, both read
/// from qubit 0 upward. Phase is ignored.
struct CanonicalOrder {
  bool operator()(const PauliString& a, const PauliString& b) const noexcept;
};

/// Exact product a * b including the phase.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

/// Symplectic-form test.
bool commutes(const PauliString& a, const PauliString& b);

/// Weighted sum of phase-free Pauli strings.
class PauliSum {
 public:
  using TermMap = std::map<PauliString, Complex, CanonicalOrder>;

  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}
  PauliSum(const PauliString& p, Complex coeff = 1.0);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  /// Adds coeff * p, folding p's phase into the coefficient.
  void add(const PauliString& p, Complex coeff = 1.0);
  /// Coefficient of the phase-free string `p` (zero if absent).
  Complex coefficient(const PauliString& p) const;
  Complex identity_coefficient() const;

  /// Drops terms whose coefficient magnitude is at most `tolerance`.
  PauliSum& prune(double tolerance = kPruneTolerance);
  bool is_hermitian(double tolerance = 1e-12) const;
  /// Sum of |coefficient| over non-identity terms.
  double l1_norm(bool include_identity = false) const;
  PauliSum adjoint() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// Exact (not tolerance-based) equality of the term maps.
  friend bool operator==(const PauliSum& a, const PauliSum& b) {
    return a.n_qubits_ == b.n_qubits_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_qubits_ = 0;
  TermMap terms_;
};

/// Returns R target R^dagger with R = exp(-i angle/2 generator).
///
/// Terms commuting with the generator are untouched; an anticommuting term P
/// maps to cos(angle) P - i sin(angle) generator P. Angles within 1e-15 of a
/// multiple of pi/2 use exact trigonometric values, so Clifford rotations
/// never leave numerical dust.
PauliSum conjugate_by_rotation(const PauliSum& target,
                               const PauliString& generator, double angle);

/// Single-string variant for Clifford angles (+-pi/2): the image is one
/// Pauli string with its phase. Throws ContractError for other angles.
PauliString clifford_conjugate(const PauliString& target,
                               const PauliString& generator, double angle);

}  // namespace csvqd
