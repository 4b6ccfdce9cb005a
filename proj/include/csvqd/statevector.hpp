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
#include <string>
#include <vector>

#include "csvqd/pauli.hpp"
#include "json.hpp"

namespace csvqd {

/// Dense 2^n state. Basis index bit q holds qubit q.
class Statevector {
 public:
  /// Largest register the simulator will allocate.
  static constexpr std::size_t kMaxQubits = 30;

  Statevector() = default;
  /// |0...0>.
  explicit Statevector(std::size_t n_qubits);
  static Statevector basis(std::size_t n_qubits, std::uint64_t index);
  /// Takes amplitudes as given; the length must be a power of two.
  static Statevector from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<Complex> amplitudes() noexcept { return amps_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  void normalize();

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// angle = scale * params[slot] + offset.
struct ParamRef {
  std::size_t slot = 0;
  double scale = 1.0;
  double offset = 0.0;

  double angle(std::span<const double> params) const {
    return scale * params[slot] + offset;
  }
};

enum class GateKind { X, CNOT, Rx, Ry, Rz, NBlock, PauliExp };

/// Rotations are exp(-i angle/2 P). NBlock(a, b) with refs (tx, ty, tz) is
/// exp(i(tx XX + ty YY + tz ZZ)) on qubits a, b. PauliExp is
/// exp(-i angle/2 generator).
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<std::size_t> qubits;
  std::vector<ParamRef> params;
  PauliString generator;
};

/// A commuting factor of a parametric gate: exp(-i ref.angle/2 generator).
struct RotationComponent {
  PauliString generator;
  ParamRef ref;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_parameters() const noexcept { return n_parameters_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// Reserves a fresh parameter slot.
  std::size_t add_parameter() { return n_parameters_++; }
  void set_n_parameters(std::size_t n) { n_parameters_ = n; }

  Circuit& x(std::size_t q);
  Circuit& cnot(std::size_t control, std::size_t target);
  Circuit& rx(std::size_t q, ParamRef ref);
  Circuit& ry(std::size_t q, ParamRef ref);
  Circuit& rz(std::size_t q, ParamRef ref);
  Circuit& nblock(std::size_t a, std::size_t b, ParamRef tx, ParamRef ty,
                  ParamRef tz);
  Circuit& pauli_exp(const PauliString& generator, ParamRef ref);
  Circuit& append(const Gate& gate);

  /// Throws DimensionError on out-of-range qubits or slots.
  void validate() const;

  /// NBlock gates expanded into CNOTs and single-qubit rotations; PauliExp
  /// gates are kept. Unitary up to global phase.
  Circuit lowered() const;
  std::size_t depth() const;
  std::size_t cnot_count() const;

 private:
  std::size_t n_qubits_ = 0;
  std::size_t n_parameters_ = 0;
  std::vector<Gate> gates_;
};

/// Commuting Pauli-rotation factors of a parametric gate (empty for X/CNOT).
std::vector<RotationComponent> rotation_components(const Gate& gate,
                                                   std::size_t n_qubits);

nlohmann::json circuit_to_json(const Circuit& circuit);

void apply_in_place(const Circuit& circuit, std::span<const double> params,
                    Statevector& state);
Statevector apply(const Circuit& circuit, std::span<const double> params,
                  const Statevector& input);

/// psi <- exp(-i angle/2 generator) psi.
void apply_pauli_exponential_in_place(const PauliString& generator, double angle,
                                      Statevector& state);
Statevector apply_pauli_exponential(const PauliString& generator, double angle,
                                    const Statevector& state);

/// P|psi> for a single Pauli string (phase included).
Statevector apply_pauli(const PauliString& p, const Statevector& state);

/// <psi|H|psi>. Throws ContractError when H is not Hermitian.
double expectation(const PauliSum& h, const Statevector& state);
/// |<a|b>|^2.
double overlap_sq(const Statevector& a, const Statevector& b);
Complex inner_product(const Statevector& a, const Statevector& b);

/// A Hermitian PauliSum flattened for repeated use inside optimisation loops.
class CompiledOperator {
 public:
  CompiledOperator() = default;
  explicit CompiledOperator(const PauliSum& h);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  double expectation(const Statevector& state) const;
  /// out = H in.
  void apply(const Statevector& in, Statevector& out) const;

 private:
  struct Term {
    std::uint64_t x, z;
    unsigned phase;
    Complex coeff;
  };
  std::size_t n_qubits_ = 0;
  std::vector<Term> terms_;
};

/// Gradient of <psi(theta)| A |psi(theta)> with respect to the circuit slots,
/// by the adjoint method. `lambda` must be A|psi(theta)> for the final state.
std::vector<double> adjoint_gradient(const Circuit& circuit,
                                     std::span<const double> params,
                                     const Statevector& final_state,
                                     const Statevector& lambda);

/// Gradient of <psi(theta)|h|psi(theta)> by the two-term shift rule applied to
/// each rotation component separately.
std::vector<double> parameter_shift_gradient(const Circuit& circuit,
                                             std::span<const double> params,
                                             const Statevector& input,
                                             const PauliSum& h);

}  // namespace csvqd
