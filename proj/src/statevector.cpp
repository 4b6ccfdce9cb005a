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

#include "csvqd/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "csvqd/errors.hpp"
#include "csvqd/kernels.hpp"

namespace csvqd {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": qubit counts differ (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

void rotate(Statevector& s, const PauliString& g, double angle) {
  kernels::apply_pauli_rotation(s.amplitudes(), g.x(), g.z(), g.phase(), angle);
}

struct Shift {
  std::size_t gate = static_cast<std::size_t>(-1);
  std::size_t component = 0;
  double delta = 0.0;
};

void apply_gate(const Gate& gate, std::size_t n, std::span<const double> params,
                Statevector& s, bool inverse, std::size_t index = 0,
                const Shift& shift = {}) {
  switch (gate.kind) {
    case GateKind::X:
      kernels::apply_x(s.amplitudes(), gate.qubits[0]);
      return;
    case GateKind::CNOT:
      kernels::apply_cnot(s.amplitudes(), gate.qubits[0], gate.qubits[1]);
      return;
    default:
      break;
  }
  // Components commute, so order and inversion only flip the angles.
  const auto comps = rotation_components(gate, n);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    double angle = comps[c].ref.angle(params);
    if (index == shift.gate && c == shift.component) angle += shift.delta;
    rotate(s, comps[c].generator, inverse ? -angle : angle);
  }
}

void apply_impl(const Circuit& circuit, std::span<const double> params,
                Statevector& state, const Shift& shift) {
  if (params.size() != circuit.n_parameters()) {
    throw DimensionError("circuit expects " +
                         std::to_string(circuit.n_parameters()) +
                         " parameters, got " + std::to_string(params.size()));
  }
  require_same_size(circuit.n_qubits(), state.n_qubits(), "apply");
  const auto& gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    apply_gate(gates[i], circuit.n_qubits(), params, state, false, i, shift);
  }
}

}  // namespace

Statevector::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxQubits) {
    throw ResourceError("statevector of " + std::to_string(n_qubits) +
                        " qubits exceeds the " + std::to_string(kMaxQubits) +
                        "-qubit limit");
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex(0.0, 0.0));
  amps_[0] = 1.0;
}

Statevector Statevector::basis(std::size_t n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dimension()) {
    throw DimensionError("basis index " + std::to_string(index) +
                         " out of range for " + std::to_string(n_qubits) +
                         " qubits");
  }
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
  if (amplitudes.empty() || (amplitudes.size() & (amplitudes.size() - 1)) != 0) {
    throw DimensionError("amplitude count " + std::to_string(amplitudes.size()) +
                         " is not a power of two");
  }
  Statevector s;
  s.n_qubits_ = static_cast<std::size_t>(std::countr_zero(amplitudes.size()));
  s.amps_ = std::move(amplitudes);
  return s;
}

double Statevector::norm() const { return std::sqrt(kernels::norm_squared(amps_)); }

void Statevector::normalize() {
  const double n = norm();
  if (n == 0.0) throw ContractError("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

// --- circuit --------------------------------------------------------------

Circuit& Circuit::x(std::size_t q) { return append({GateKind::X, {q}, {}, {}}); }

Circuit& Circuit::cnot(std::size_t control, std::size_t target) {
  return append({GateKind::CNOT, {control, target}, {}, {}});
}

Circuit& Circuit::rx(std::size_t q, ParamRef ref) {
  return append({GateKind::Rx, {q}, {ref}, {}});
}
Circuit& Circuit::ry(std::size_t q, ParamRef ref) {
  return append({GateKind::Ry, {q}, {ref}, {}});
}
Circuit& Circuit::rz(std::size_t q, ParamRef ref) {
  return append({GateKind::Rz, {q}, {ref}, {}});
}

Circuit& Circuit::nblock(std::size_t a, std::size_t b, ParamRef tx, ParamRef ty,
                         ParamRef tz) {
  return append({GateKind::NBlock, {a, b}, {tx, ty, tz}, {}});
}

Circuit& Circuit::pauli_exp(const PauliString& generator, ParamRef ref) {
  return append({GateKind::PauliExp, {}, {ref}, generator});
}

Circuit& Circuit::append(const Gate& gate) {
  for (const auto& r : gate.params) {
    n_parameters_ = std::max(n_parameters_, r.slot + 1);
  }
  gates_.push_back(gate);
  return *this;
}

void Circuit::validate() const {
  for (const auto& g : gates_) {
    for (auto q : g.qubits) {
      if (q >= n_qubits_) {
        throw DimensionError("gate qubit " + std::to_string(q) +
                             " out of range for " + std::to_string(n_qubits_) +
                             " qubits");
      }
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
      throw DimensionError("two-qubit gate on a repeated qubit");
    }
    for (const auto& r : g.params) {
      if (r.slot >= n_parameters_) throw DimensionError("parameter slot out of range");
    }
    if (g.kind == GateKind::PauliExp) {
      if (g.generator.n_qubits() != n_qubits_) {
        throw DimensionError("Pauli exponential acts on the wrong qubit count");
      }
      if (!g.generator.is_hermitian()) {
        throw ContractError("Pauli exponential generator must be Hermitian");
      }
    }
  }
}

Circuit Circuit::lowered() const {
  Circuit out(n_qubits_);
  out.n_parameters_ = n_parameters_;
  for (const auto& g : gates_) {
    if (g.kind != GateKind::NBlock) {
      out.gates_.push_back(g);
      continue;
    }
    // Three-CNOT form of exp(i(a XX + b YY + c ZZ)), equal to it up to a
    // global phase.
    const std::size_t q0 = g.qubits[0], q1 = g.qubits[1];
    const ParamRef& a = g.params[0];
    const ParamRef& b = g.params[1];
    const ParamRef& c = g.params[2];
    const std::size_t any = a.slot;
    out.gates_.push_back({GateKind::Rz, {q1}, {{any, 0.0, kHalfPi}}, {}});
    out.gates_.push_back({GateKind::CNOT, {q1, q0}, {}, {}});
    out.gates_.push_back(
        {GateKind::Rz, {q0}, {{c.slot, -2 * c.scale, -2 * c.offset + kHalfPi}}, {}});
    out.gates_.push_back(
        {GateKind::Ry, {q1}, {{a.slot, -2 * a.scale, -2 * a.offset + kHalfPi}}, {}});
    out.gates_.push_back({GateKind::CNOT, {q0, q1}, {}, {}});
    out.gates_.push_back(
        {GateKind::Ry, {q1}, {{b.slot, 2 * b.scale, 2 * b.offset - kHalfPi}}, {}});
    out.gates_.push_back({GateKind::CNOT, {q1, q0}, {}, {}});
    out.gates_.push_back({GateKind::Rz, {q0}, {{any, 0.0, -kHalfPi}}, {}});
  }
  return out;
}

std::size_t Circuit::depth() const {
  const Circuit low = lowered();
  std::vector<std::size_t> level(n_qubits_, 0);
  std::size_t depth = 0;
  for (const auto& g : low.gates_) {
    std::vector<std::size_t> qs = g.qubits;
    if (g.kind == GateKind::PauliExp) {
      for (std::size_t q = 0; q < n_qubits_; ++q) {
        if ((g.generator.support() >> q) & 1) qs.push_back(q);
      }
    }
    std::size_t top = 0;
    for (auto q : qs) top = std::max(top, level[q]);
    for (auto q : qs) level[q] = top + 1;
    depth = std::max(depth, top + 1);
  }
  return depth;
}

std::size_t Circuit::cnot_count() const {
  const Circuit low = lowered();
  return static_cast<std::size_t>(
      std::count_if(low.gates_.begin(), low.gates_.end(),
                    [](const Gate& g) { return g.kind == GateKind::CNOT; }));
}

std::vector<RotationComponent> rotation_components(const Gate& gate,
                                                   std::size_t n) {
  switch (gate.kind) {
    case GateKind::Rx:
      return {{PauliString::single(n, gate.qubits[0], 'X'), gate.params[0]}};
    case GateKind::Ry:
      return {{PauliString::single(n, gate.qubits[0], 'Y'), gate.params[0]}};
    case GateKind::Rz:
      return {{PauliString::single(n, gate.qubits[0], 'Z'), gate.params[0]}};
    case GateKind::PauliExp:
      return {{gate.generator, gate.params[0]}};
    case GateKind::NBlock: {
      // exp(i t P) = exp(-i (-2t)/2 P).
      std::vector<RotationComponent> out;
      const char axes[3] = {'X', 'Y', 'Z'};
      for (int k = 0; k < 3; ++k) {
        const auto a = PauliString::single(n, gate.qubits[0], axes[k]);
        const auto b = PauliString::single(n, gate.qubits[1], axes[k]);
        const ParamRef& r = gate.params[static_cast<std::size_t>(k)];
        out.push_back({a * b, {r.slot, -2 * r.scale, -2 * r.offset}});
      }
      return out;
    }
    default:
      return {};
  }
}

nlohmann::json circuit_to_json(const Circuit& circuit) {
  static const char* kNames[] = {"X", "CNOT", "RX", "RY", "RZ", "NBLOCK", "PAULIEXP"};
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : circuit.gates()) {
    nlohmann::json j;
    j["gate"] = kNames[static_cast<int>(g.kind)];
    if (!g.qubits.empty()) j["qubits"] = g.qubits;
    if (g.kind == GateKind::PauliExp) j["generator"] = g.generator.to_string();
    if (!g.params.empty()) {
      j["params"] = nlohmann::json::array();
      for (const auto& r : g.params) {
        j["params"].push_back({{"slot", r.slot}, {"scale", r.scale}, {"offset", r.offset}});
      }
    }
    gates.push_back(std::move(j));
  }
  return {{"n_qubits", circuit.n_qubits()},
          {"n_parameters", circuit.n_parameters()},
          {"depth", circuit.depth()},
          {"cnot_count", circuit.cnot_count()},
          {"gates", std::move(gates)}};
}

// --- application ------------------------------------------------------------

void apply_in_place(const Circuit& circuit, std::span<const double> params,
                    Statevector& state) {
  apply_impl(circuit, params, state, {});
}

Statevector apply(const Circuit& circuit, std::span<const double> params,
                  const Statevector& input) {
  Statevector out = input;
  apply_in_place(circuit, params, out);
  return out;
}

void apply_pauli_exponential_in_place(const PauliString& generator, double angle,
                                      Statevector& state) {
  require_same_size(generator.n_qubits(), state.n_qubits(), "pauli exponential");
  if (!generator.is_hermitian()) {
    throw ContractError("Pauli exponential generator must be Hermitian");
  }
  rotate(state, generator, angle);
}

Statevector apply_pauli_exponential(const PauliString& generator, double angle,
                                    const Statevector& state) {
  Statevector out = state;
  apply_pauli_exponential_in_place(generator, angle, out);
  return out;
}

Statevector apply_pauli(const PauliString& p, const Statevector& state) {
  require_same_size(p.n_qubits(), state.n_qubits(), "apply_pauli");
  Statevector out = state;
  std::fill(out.amplitudes().begin(), out.amplitudes().end(), Complex(0.0));
  kernels::accumulate_pauli(state.amplitudes(), out.amplitudes(), p.x(), p.z(),
                            p.phase(), 1.0);
  return out;
}

double expectation(const PauliSum& h, const Statevector& state) {
  if (!h.is_hermitian()) throw ContractError("expectation of a non-Hermitian operator");
  return CompiledOperator(h).expectation(state);
}

Complex inner_product(const Statevector& a, const Statevector& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "inner_product");
  return kernels::inner_product(a.amplitudes(), b.amplitudes());
}

double overlap_sq(const Statevector& a, const Statevector& b) {
  return std::norm(inner_product(a, b));
}

CompiledOperator::CompiledOperator(const PauliSum& h) : n_qubits_(h.n_qubits()) {
  for (const auto& [p, c] : h) {
    terms_.push_back({p.x(), p.z(), p.phase(), c});
  }
}

double CompiledOperator::expectation(const Statevector& state) const {
  require_same_size(n_qubits_, state.n_qubits(), "expectation");
  Complex total = 0.0;
  for (const auto& t : terms_) {
    total += t.coeff * kernels::pauli_matrix_element(state.amplitudes(),
                                                     state.amplitudes(), t.x,
                                                     t.z, t.phase);
  }
  const double scale = std::max(1.0, std::abs(total.real()));
  if (std::abs(total.imag()) > 1e-10 * scale) {
    throw ContractError("expectation has imaginary residue " +
                        std::to_string(total.imag()));
  }
  return total.real();
}

void CompiledOperator::apply(const Statevector& in, Statevector& out) const {
  require_same_size(n_qubits_, in.n_qubits(), "operator apply");
  if (out.dimension() != in.dimension()) out = in;
  std::fill(out.amplitudes().begin(), out.amplitudes().end(), Complex(0.0));
  for (const auto& t : terms_) {
    kernels::accumulate_pauli(in.amplitudes(), out.amplitudes(), t.x, t.z,
                              t.phase, t.coeff);
  }
}

// --- gradients --------------------------------------------------------------

std::vector<double> adjoint_gradient(const Circuit& circuit,
                                     std::span<const double> params,
                                     const Statevector& final_state,
                                     const Statevector& lambda) {
  std::vector<double> grad(circuit.n_parameters(), 0.0);
  Statevector psi = final_state;
  Statevector lam = lambda;
  const auto& gates = circuit.gates();
  for (std::size_t i = gates.size(); i-- > 0;) {
    const Gate& g = gates[i];
    // d/dphi exp(-i phi/2 G) psi = -i/2 G psi; G commutes with the
    // gate so the derivative can be taken at its output.
    for (const auto& comp : rotation_components(g, circuit.n_qubits())) {
      if (comp.ref.scale == 0.0) continue;
      const auto& G = comp.generator;
      const Complex m = kernels::pauli_matrix_element(
          lam.amplitudes(), psi.amplitudes(), G.x(), G.z(), G.phase());
      grad[comp.ref.slot] += comp.ref.scale * m.imag();
    }
    apply_gate(g, circuit.n_qubits(), params, psi, true);
    apply_gate(g, circuit.n_qubits(), params, lam, true);
  }
  return grad;
}

std::vector<double> parameter_shift_gradient(const Circuit& circuit,
                                             std::span<const double> params,
                                             const Statevector& input,
                                             const PauliSum& h) {
  const CompiledOperator op(h);
  std::vector<double> grad(circuit.n_parameters(), 0.0);
  const auto& gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto comps = rotation_components(gates[i], circuit.n_qubits());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (comps[c].ref.scale == 0.0) continue;
      Statevector plus = input, minus = input;
      apply_impl(circuit, params, plus, {i, c, kHalfPi});
      apply_impl(circuit, params, minus, {i, c, -kHalfPi});
      grad[comps[c].ref.slot] +=
          comps[c].ref.scale * 0.5 * (op.expectation(plus) - op.expectation(minus));
    }
  }
  return grad;
}

}  // namespace csvqd
