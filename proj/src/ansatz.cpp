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

#include "csvqd/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "csvqd/errors.hpp"

namespace csvqd {
namespace {

// +1 for alpha, -1 for beta.
int spin_of(std::size_t q, std::size_t n, bool interleaved) {
  if (interleaved) return (q % 2 == 0) ? 1 : -1;
  return q < n / 2 ? 1 : -1;
}

PauliSum ladder(std::size_t n, std::size_t p, double y_sign) {
  if (p >= n) throw DimensionError("spin orbital out of range");
  std::uint64_t zmask = (std::uint64_t{1} << p) - 1;
  PauliString x(n, 1ULL << p, zmask, 0);
  PauliString y(n, 1ULL << p, zmask | (1ULL << p), 0);  // Y_p * Z_{<p}
  PauliSum out(n);
  out.add(x, 0.5);
  out.add(y, Complex(0.0, 0.5 * y_sign));
  return out;
}

Circuit with_reference(std::size_t n, std::uint64_t bits) {
  Circuit c(n);
  for (std::size_t q = 0; q < n; ++q) {
    if ((bits >> q) & 1) c.x(q);
  }
  return c;
}

void add_exponentials(Circuit& c, const PauliSum& generator) {
  // exp(i theta G) = prod exp(-i (-2 g theta)/2 P).
  const std::size_t slot = c.add_parameter();
  for (const auto& [p, g] : generator) {
    c.pauli_exp(p, {slot, -2.0 * g.real(), 0.0});
  }
}

}  // namespace

PauliSum jw_creation(std::size_t n, std::size_t p) { return ladder(n, p, -1.0); }
PauliSum jw_annihilation(std::size_t n, std::size_t p) { return ladder(n, p, 1.0); }

ExcitationPool build_excitation_pool(const MoleculeFixture& f, bool spin_filter) {
  const std::size_t n = f.n_qubits;
  const bool inter = f.interleaved_spin_orbitals();
  std::vector<std::size_t> occ, vir;
  for (std::size_t q = 0; q < n; ++q) (f.hf_occupation[q] == '1' ? occ : vir).push_back(q);
  auto spin = [&](std::size_t q) { return spin_of(q, n, inter); };

  ExcitationPool pool;
  for (auto i : occ) {
    for (auto a : vir) {
      if (spin_filter && spin(i) != spin(a)) continue;
      pool.singles.push_back({{i}, {a}});
    }
  }
  for (std::size_t ii = 0; ii < occ.size(); ++ii) {
    for (std::size_t jj = ii + 1; jj < occ.size(); ++jj) {
      for (std::size_t aa = 0; aa < vir.size(); ++aa) {
        for (std::size_t bb = aa + 1; bb < vir.size(); ++bb) {
          const auto i = occ[ii], j = occ[jj], a = vir[aa], b = vir[bb];
          if (spin_filter && spin(i) + spin(j) != spin(a) + spin(b)) continue;
          pool.doubles.push_back({{i, j}, {a, b}});
        }
      }
    }
  }
  auto generator = [&](const Excitation& e) {
    // T = a_a^+ (a_b^+) (a_j) a_i, G = (T - T^+)/i.
    PauliSum t = PauliSum(PauliString(n), 1.0);
    for (auto v : e.virtuals) t = t * jw_creation(n, v);
    for (auto it = e.occupied.rbegin(); it != e.occupied.rend(); ++it) {
      t = t * jw_annihilation(n, *it);
    }
    PauliSum g = (t - t.adjoint()) * Complex(0.0, -1.0);
    return g.prune();
  };
  // Product order: all excitations sorted by (occupied, virtual) index
  // tuples, so singles and doubles interleave.
  pool.kept = pool.singles;
  pool.kept.insert(pool.kept.end(), pool.doubles.begin(), pool.doubles.end());
  std::stable_sort(pool.kept.begin(), pool.kept.end(),
                   [](const Excitation& a, const Excitation& b) {
                     return std::tie(a.occupied, a.virtuals) <
                            std::tie(b.occupied, b.virtuals);
                   });
  for (const auto& e : pool.kept) pool.mapped_generators.push_back(generator(e));
  return pool;
}

Ansatz build_uccsd(const MoleculeFixture& f, const ContextualSubspace* cs,
                   bool spin_filter) {
  Ansatz a;
  a.kind = "uccsd";
  ExcitationPool pool = build_excitation_pool(f, spin_filter);
  if (!cs) {
    a.circuit = with_reference(f.n_qubits, f.hf_index());
    a.initial_state = Statevector(f.n_qubits);
    for (const auto& g : pool.mapped_generators) add_exponentials(a.circuit, g);
    a.pool = std::move(pool);
    return a;
  }

  const auto& ph = cs->projected;
  std::vector<PauliSum> projected;
  std::vector<Excitation> kept;
  for (std::size_t k = 0; k < pool.mapped_generators.size(); ++k) {
    const PauliSum one[] = {pool.mapped_generators[k]};
    auto r = project_operator_pool(one, ph.rotations, ph.fixed_positions);
    if (r.empty()) continue;
    projected.push_back(std::move(r.front()));
    kept.push_back(pool.kept[k]);
  }
  if (projected.empty()) {
    throw ContractError("no excitation survives projection onto " +
                        std::to_string(ph.n_qubits()) +
                        " qubits; use more qubits");
  }
  const std::size_t k = ph.n_qubits();
  const auto& ref = cs->reference;
  const bool basis_ref =
      ref.fell_back || std::abs(std::abs(ref.state[ref.bitstring]) - 1.0) < 1e-12;
  if (basis_ref) {
    a.circuit = with_reference(k, ref.bitstring);
    a.initial_state = Statevector(k);
  } else {
    a.circuit = Circuit(k);
    a.initial_state = ref.state;
  }
  for (const auto& g : projected) add_exponentials(a.circuit, g);
  pool.mapped_generators = std::move(projected);
  pool.kept = std::move(kept);
  a.pool = std::move(pool);
  return a;
}

Circuit build_ryrz(std::size_t n, std::size_t repeats, std::uint64_t bits,
                   EntanglerLayout layout) {
  if (repeats < 1) throw RangeError("RyRz needs at least one repeat");
  Circuit c = with_reference(n, bits);
  auto rotations = [&] {
    for (std::size_t q = 0; q < n; ++q) {
      c.ry(q, {c.add_parameter()});
      c.rz(q, {c.add_parameter()});
    }
  };
  for (std::size_t r = 0; r < repeats; ++r) {
    rotations();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (layout == EntanglerLayout::linear) {
        c.cnot(i, i + 1);
      } else {
        for (std::size_t j = i + 1; j < n; ++j) c.cnot(i, j);
      }
    }
  }
  rotations();
  return c;
}

Circuit build_nblock(std::size_t n, std::size_t repeats, std::uint64_t bits) {
  if (n < 2) throw RangeError("N-block ansatz needs at least two qubits");
  if (repeats < 1) throw RangeError("N-block ansatz needs at least one repeat");
  Circuit c = with_reference(n, bits);
  for (std::size_t r = 0; r < repeats; ++r) {
    for (std::size_t start : {std::size_t{0}, std::size_t{1}}) {
      for (std::size_t a = start; a + 1 < n; a += 2) {
        const auto tx = c.add_parameter(), ty = c.add_parameter(), tz = c.add_parameter();
        c.nblock(a, a + 1, {tx}, {ty}, {tz});
      }
    }
  }
  return c;
}

Eigen::Matrix4cd nblock_unitary(double tx, double ty, double tz) {
  // XX, YY, ZZ commute, so the exponential factorises into cos + i sin P.
  Eigen::Matrix4cd xx = Eigen::Matrix4cd::Zero(), yy = Eigen::Matrix4cd::Zero(),
                   zz = Eigen::Matrix4cd::Zero();
  xx(0, 3) = xx(3, 0) = xx(1, 2) = xx(2, 1) = 1.0;
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  zz.diagonal() << 1.0, -1.0, -1.0, 1.0;
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  const Complex i(0.0, 1.0);
  auto e = [&](const Eigen::Matrix4cd& p, double t) {
    return Eigen::Matrix4cd(std::cos(t) * id + i * std::sin(t) * p);
  };
  return e(xx, tx) * e(yy, ty) * e(zz, tz);
}

std::size_t ryrz_parameter_count(std::size_t n, std::size_t repeats) {
  return 2 * n * (repeats + 1);
}

std::size_t nblock_blocks_per_layer(std::size_t n) {
  return n / 2 + (n - 1) / 2;
}

}  // namespace csvqd
