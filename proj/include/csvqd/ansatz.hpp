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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csvqd/hamiltonian_io.hpp"
#include "csvqd/pauli.hpp"
#include "csvqd/statevector.hpp"
#include "csvqd/subspace.hpp"

namespace csvqd {

/// An excitation from occupied to virtual spin orbitals, each list ascending.
struct Excitation {
  std::vector<std::size_t> occupied;
  std::vector<std::size_t> virtuals;
};

struct ExcitationPool {
  std::vector<Excitation> singles;
  std::vector<Excitation> doubles;
  /// Product order: every excitation sorted by its (occupied, virtual)
  /// tuples, restricted to those surviving any projection.
  std::vector<Excitation> kept;
  /// (T - T^dagger)/i for each entry of `kept`.
  std::vector<PauliSum> mapped_generators;
};

/// A circuit together with the state it is applied to.
struct Ansatz {
  std::string kind;
  Circuit circuit;
  Statevector initial_state;
  std::optional<ExcitationPool> pool;
};

/// a_p^dagger and a_p under Jordan-Wigner: (X_p -+ i Y_p)/2 * Z_{q<p}.
PauliSum jw_creation(std::size_t n_qubits, std::size_t p);
PauliSum jw_annihilation(std::size_t n_qubits, std::size_t p);

/// S_z-preserving singles and doubles from the HF occupation.
ExcitationPool build_excitation_pool(const MoleculeFixture& fixture,
                                     bool spin_filter = true);

/// Reference preparation then one first-order product of Pauli exponentials,
/// one parameter per excitation. With a subspace the generators are
/// projected first; the reference becomes the projected HF state. Throws
/// ContractError when projection leaves no excitation.
Ansatz build_uccsd(const MoleculeFixture& fixture,
                   const ContextualSubspace* subspace = nullptr,
                   bool spin_filter = true);

enum class EntanglerLayout { full, linear };

/// Ry+Rz on every qubit, then CNOTs, repeated; a final rotation layer.
/// X gates first prepare `reference_bits`.
Circuit build_ryrz(std::size_t n_qubits, std::size_t n_repeats,
                   std::uint64_t reference_bits = 0,
                   EntanglerLayout layout = EntanglerLayout::full);

/// Brick layers of N blocks: pairs (0,1),(2,3),... then (1,2),(3,4),...
Circuit build_nblock(std::size_t n_qubits, std::size_t n_repeats,
                     std::uint64_t reference_bits = 0);

/// exp(i(tx XX + ty YY + tz ZZ)); index bit 0 is the first qubit.
Eigen::Matrix4cd nblock_unitary(double tx, double ty, double tz);

/// Closed-form counts used by tests and reports.
std::size_t ryrz_parameter_count(std::size_t n_qubits, std::size_t n_repeats);
std::size_t nblock_blocks_per_layer(std::size_t n_qubits);

}  // namespace csvqd
