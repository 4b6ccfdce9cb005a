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

// Test-only dense reference built from explicit Kronecker products. It
// shares no code with the library's bit-twiddling kernels, so agreement
// between the two is meaningful.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <cstdint>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "csvqd/pauli.hpp"
#include "csvqd/statevector.hpp"

namespace csvqd::testing {

using Cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Eigen::Matrix2cd pauli_matrix(char c) {
  Eigen::Matrix2cd m;
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Cd(0, -1), Cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// `letters[q]` acts on qubit q, which is bit q of the basis index, so the
/// Kronecker product runs from the highest qubit down.
inline Mat dense_letters(const std::string& letters) {
  Mat m = Mat::Identity(1, 1);
  for (std::size_t k = letters.size(); k-- > 0;) m = kron(m, pauli_matrix(letters[k]));
  return m;
}

inline Cd phase_value(unsigned phase) {
  static const Cd v[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return v[phase & 3u];
}

inline Mat dense(const PauliString& p) {
  return phase_value(p.phase()) * dense_letters(p.letters());
}

/// Kronecker product evaluated entry by entry: a Pauli tensor has one nonzero
/// per column, the product of the per-qubit matrix entries. Equivalent to
/// dense(p) but cheap enough for 10+ qubit sums.
inline void add_term(Mat& m, const PauliString& p, Cd coeff) {
  const std::string letters = p.letters();
  std::array<Eigen::Matrix2cd, 64> mats;
  for (std::size_t q = 0; q < letters.size(); ++q) mats[q] = pauli_matrix(letters[q]);
  const Cd scale = coeff * phase_value(p.phase());
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Eigen::Index row = 0;
    Cd v = scale;
    for (std::size_t q = 0; q < letters.size(); ++q) {
      const int cb = static_cast<int>((col >> q) & 1);
      const int rb = (letters[q] == 'X' || letters[q] == 'Y') ? 1 - cb : cb;
      v *= mats[q](rb, cb);
      row |= static_cast<Eigen::Index>(rb) << q;
    }
    m(row, col) += v;
  }
}

inline Mat dense(const PauliSum& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Mat m = Mat::Zero(dim, dim);
  if (h.n_qubits() <= 4) {
    for (const auto& [p, c] : h) m += c * dense(p);
  } else {
    for (const auto& [p, c] : h) add_term(m, p, c);
  }
  return m;
}

inline Vec dense(const Statevector& s) {
  Vec v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

/// exp(i t H) for Hermitian H via its eigendecomposition.
inline Mat expi_hermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXd w = es.eigenvalues();
  Vec phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(Cd(0, t * w(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline std::vector<double> eigenvalues(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(es.eigenvalues().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
  return out;
}

/// exp(-i angle/2 P) on n qubits, any Hermitian single string.
inline Mat rotation(const PauliString& p, double angle) {
  const Mat id = Mat::Identity(Eigen::Index{1} << p.n_qubits(), Eigen::Index{1} << p.n_qubits());
  return std::cos(angle / 2) * id - Cd(0, std::sin(angle / 2)) * dense(p);
}

inline Mat cnot_matrix(std::size_t n, std::size_t c, std::size_t t) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat m = Mat::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const Eigen::Index out = ((b >> c) & 1) ? (b ^ (Eigen::Index{1} << t)) : b;
    m(out, b) = 1.0;
  }
  return m;
}

inline std::string single_letters(std::size_t n, std::size_t q, char c) {
  std::string s(n, 'I');
  s[q] = c;
  return s;
}

/// Gate-by-gate dense product for a circuit.
inline Mat dense_circuit(const Circuit& circuit, const std::vector<double>& params) {
  const std::size_t n = circuit.n_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat u = Mat::Identity(dim, dim);
  auto r1 = [&](std::size_t q, char axis, double angle) {
    const Mat p = dense_letters(single_letters(n, q, axis));
    return Mat(std::cos(angle / 2) * Mat::Identity(dim, dim) - Cd(0, std::sin(angle / 2)) * p);
  };
  for (const auto& g : circuit.gates()) {
    Mat step;
    switch (g.kind) {
      case GateKind::X: step = dense_letters(single_letters(n, g.qubits[0], 'X')); break;
      case GateKind::CNOT: step = cnot_matrix(n, g.qubits[0], g.qubits[1]); break;
      case GateKind::Rx: step = r1(g.qubits[0], 'X', g.params[0].angle(params)); break;
      case GateKind::Ry: step = r1(g.qubits[0], 'Y', g.params[0].angle(params)); break;
      case GateKind::Rz: step = r1(g.qubits[0], 'Z', g.params[0].angle(params)); break;
      case GateKind::PauliExp: step = rotation(g.generator, g.params[0].angle(params)); break;
      case GateKind::NBlock: {
        std::string xx(n, 'I'), yy(n, 'I'), zz(n, 'I');
        xx[g.qubits[0]] = xx[g.qubits[1]] = 'X';
        yy[g.qubits[0]] = yy[g.qubits[1]] = 'Y';
        zz[g.qubits[0]] = zz[g.qubits[1]] = 'Z';
        const Mat h = g.params[0].angle(params) * dense_letters(xx) +
                      g.params[1].angle(params) * dense_letters(yy) +
                      g.params[2].angle(params) * dense_letters(zz);
        step = expi_hermitian(h, 1.0);
        break;
      }
    }
    u = step * u;
  }
  return u;
}

/// Distance between unitaries modulo a global phase.
inline double phase_free_distance(const Mat& a, const Mat& b) {
  const Cd tr = (b.adjoint() * a).trace();
  const Cd ph = std::abs(tr) > 0 ? tr / std::abs(tr) : Cd(1.0);
  return (a - ph * b).cwiseAbs().maxCoeff();
}

// --- random generators -------------------------------------------------------

inline PauliString random_string(std::mt19937_64& rng, std::size_t n, bool random_phase) {
  std::uniform_int_distribution<int> letter(0, 3), ph(0, 3);
  std::string s(n, 'I');
  for (auto& c : s) c = "IXYZ"[letter(rng)];
  auto p = PauliString::parse(s);
  return random_phase ? p.with_phase(static_cast<unsigned>(ph(rng))) : p;
}

inline PauliSum random_hermitian(std::mt19937_64& rng, std::size_t n, std::size_t terms) {
  std::normal_distribution<double> coeff(0.0, 1.0);
  PauliSum h(n);
  for (std::size_t k = 0; k < terms; ++k) h.add(random_string(rng, n, false), coeff(rng));
  return h;
}

inline Statevector random_state(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Cd> amps(std::size_t{1} << n);
  for (auto& a : amps) a = Cd(g(rng), g(rng));
  auto s = Statevector::from_amplitudes(std::move(amps));
  s.normalize();
  return s;
}

}  // namespace csvqd::testing
