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

#include "csvqd/pauli.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "csvqd/errors.hpp"

namespace csvqd {
namespace {

std::uint64_t mask_for(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_width(std::size_t n) {
  if (n > kMaxQubits) {
    throw DimensionError("PauliString supports at most 64 qubits, got " +
                         std::to_string(n));
  }
}

void check_same_width(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("Pauli operands act on " +
                         std::to_string(a.n_qubits()) + " and " +
                         std::to_string(b.n_qubits()) + " qubits");
  }
}

std::uint64_t reverse_bits(std::uint64_t v) {
  v = ((v >> 1) & 0x5555555555555555ULL) | ((v & 0x5555555555555555ULL) << 1);
  v = ((v >> 2) & 0x3333333333333333ULL) | ((v & 0x3333333333333333ULL) << 2);
  v = ((v >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((v & 0x0F0F0F0F0F0F0F0FULL) << 4);
  v = ((v >> 8) & 0x00FF00FF00FF00FFULL) | ((v & 0x00FF00FF00FF00FFULL) << 8);
  v = ((v >> 16) & 0x0000FFFF0000FFFFULL) | ((v & 0x0000FFFF0000FFFFULL) << 16);
  return (v >> 32) | (v << 32);
}

// cos and sin of `angle`, exact when angle is a multiple of pi/2.
std::pair<double, double> cos_sin(double angle) {
  const double quarter = angle / (std::numbers::pi / 2);
  const double nearest = std::round(quarter);
  if (std::abs(angle - nearest * (std::numbers::pi / 2)) < 1e-15) {
    switch (((static_cast<long long>(nearest) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

PauliString::PauliString(std::size_t n_qubits) : n_qubits_(n_qubits) {
  check_width(n_qubits);
}

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x,
                         std::uint64_t z, unsigned phase)
    : n_qubits_(n_qubits), x_(x), z_(z), phase_(phase & 3u) {
  check_width(n_qubits);
  if (((x | z) & ~mask_for(n_qubits)) != 0) {
    throw DimensionError("Pauli bits set beyond qubit " +
                         std::to_string(n_qubits));
  }
}

PauliString PauliString::parse(std::string_view text) {
  unsigned phase = 0;
  if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("i")) {
    phase = 1;
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  }
  check_width(text.size());
  std::uint64_t x = 0, z = 0;
  for (std::size_t q = 0; q < text.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (text[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw ValidationError("invalid Pauli letter '" +
                              std::string(1, text[q]) + "'");
    }
  }
  return PauliString(text.size(), x, z, phase);
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit,
                                char axis) {
  if (qubit >= n_qubits) {
    throw DimensionError("qubit " + std::to_string(qubit) +
                         " out of range for " + std::to_string(n_qubits));
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (axis) {
    case 'I': return PauliString(n_qubits);
    case 'X': return PauliString(n_qubits, bit, 0);
    case 'Y': return PauliString(n_qubits, bit, bit);
    case 'Z': return PauliString(n_qubits, 0, bit);
    default: throw ContractError("axis must be one of I, X, Y, Z");
  }
}

Complex PauliString::phase_factor() const noexcept {
  switch (phase_) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

char PauliString::at(std::size_t qubit) const {
  if (qubit >= n_qubits_) {
    throw DimensionError("qubit index out of range");
  }
  const bool xb = (x_ >> qubit) & 1u;
  const bool zb = (z_ >> qubit) & 1u;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::size_t PauliString::weight() const noexcept {
  return static_cast<std::size_t>(std::popcount(x_ | z_));
}

PauliString PauliString::without_phase() const noexcept {
  return with_phase(0);
}

PauliString PauliString::with_phase(unsigned phase) const noexcept {
  PauliString p = *this;
  p.phase_ = phase & 3u;
  return p;
}

std::string PauliString::letters() const {
  std::string s(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) s[q] = at(q);
  return s;
}

std::string PauliString::to_string() const {
  static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
  return kPrefix[phase_] + letters();
}

bool CanonicalOrder::operator()(const PauliString& a,
                                const PauliString& b) const noexcept {
  if (a.n_qubits() != b.n_qubits()) return a.n_qubits() < b.n_qubits();
  const auto za = reverse_bits(a.z()), zb = reverse_bits(b.z());
  if (za != zb) return za < zb;
  return reverse_bits(a.x()) < reverse_bits(b.x());
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_same_width(a, b);
  const std::uint64_t ya = a.x() & a.z(), yb = b.x() & b.z();
  const std::uint64_t xa = a.x() & ~a.z(), xb = b.x() & ~b.z();
  const std::uint64_t za = a.z() & ~a.x(), zb = b.z() & ~b.x();
  // XY = iZ, YZ = iX, ZX = iY; the reversed orders pick up -i.
  const std::uint64_t plus = (xa & yb) | (ya & zb) | (za & xb);
  const std::uint64_t minus = (ya & xb) | (za & yb) | (xa & zb);
  const int k = static_cast<int>(a.phase() + b.phase()) + std::popcount(plus) -
                std::popcount(minus);
  return PauliString(a.n_qubits(), a.x() ^ b.x(), a.z() ^ b.z(),
                     static_cast<unsigned>(((k % 4) + 4) % 4));
}

bool commutes(const PauliString& a, const PauliString& b) {
  check_same_width(a, b);
  return (std::popcount((a.x() & b.z()) ^ (a.z() & b.x())) & 1) == 0;
}

PauliSum::PauliSum(const PauliString& p, Complex coeff)
    : n_qubits_(p.n_qubits()) {
  add(p, coeff);
}

void PauliSum::add(const PauliString& p, Complex coeff) {
  if (p.n_qubits() != n_qubits_) {
    throw DimensionError("term acts on " + std::to_string(p.n_qubits()) +
                         " qubits, sum on " + std::to_string(n_qubits_));
  }
  terms_[p.without_phase()] += coeff * p.phase_factor();
}

Complex PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p.without_phase());
  return it == terms_.end() ? Complex{} : it->second;
}

Complex PauliSum::identity_coefficient() const {
  return coefficient(PauliString(n_qubits_));
}

PauliSum& PauliSum::prune(double tolerance) {
  std::erase_if(terms_,
                [&](const auto& kv) { return std::abs(kv.second) <= tolerance; });
  return *this;
}

bool PauliSum::is_hermitian(double tolerance) const {
  for (const auto& [p, c] : terms_) {
    if (std::abs(c.imag()) > tolerance) return false;
  }
  return true;
}

double PauliSum::l1_norm(bool include_identity) const {
  double total = 0.0;
  for (const auto& [p, c] : terms_) {
    if (include_identity || !p.is_identity()) total += std::abs(c);
  }
  return total;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_);
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, std::conj(c));
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw DimensionError("adding Pauli sums of different widths");
  }
  for (const auto& [p, c] : other.terms_) terms_[p] += c;
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw DimensionError("subtracting Pauli sums of different widths");
  }
  for (const auto& [p, c] : other.terms_) terms_[p] -= c;
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto& [p, c] : terms_) c *= scale;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_) {
    throw DimensionError("multiplying Pauli sums of different widths");
  }
  PauliSum out(a.n_qubits_);
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) out.add(multiply(pa, pb), ca * cb);
  }
  return out;
}

PauliSum conjugate_by_rotation(const PauliSum& target,
                               const PauliString& generator, double angle) {
  if (generator.n_qubits() != target.n_qubits()) {
    throw DimensionError("rotation generator width does not match target");
  }
  if (!generator.is_hermitian()) {
    throw ContractError("rotation generator must be Hermitian (phase +-1)");
  }
  const auto [c, s] = cos_sin(angle);
  PauliSum out(target.n_qubits());
  for (const auto& [p, coeff] : target) {
    if (commutes(generator, p)) {
      out.add(p, coeff);
      continue;
    }
    if (c != 0.0) out.add(p, coeff * c);
    if (s != 0.0) out.add(multiply(generator, p), coeff * Complex(0.0, -s));
  }
  return out.prune();
}

PauliString clifford_conjugate(const PauliString& target,
                               const PauliString& generator, double angle) {
  check_same_width(target, generator);
  if (!generator.is_hermitian()) {
    throw ContractError("rotation generator must be Hermitian (phase +-1)");
  }
  const auto [c, s] = cos_sin(angle);
  if (commutes(generator, target)) return target;
  if (c != 0.0) {
    throw ContractError("clifford_conjugate needs an angle of +-pi/2");
  }
  // -i * s * G * P, with s = +-1.
  const PauliString gp = multiply(generator, target);
  return gp.with_phase(gp.phase() + (s > 0 ? 3u : 1u));
}

}  // namespace csvqd
