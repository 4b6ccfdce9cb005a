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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "csvqd/pauli.hpp"
#include "csvqd/subspace.hpp"
#include "json.hpp"

namespace csvqd {

/// A molecular qubit Hamiltonian plus the chemistry needed to run on it.
struct MoleculeFixture {
  std::string name;
  /// Free text, conventionally the bond length in angstrom.
  std::string geometry;
  std::size_t n_qubits = 0;
  std::size_t n_electrons = 0;
  /// One character per qubit, '1' for occupied, qubit 0 leftmost.
  std::string hf_occupation;
  PauliSum hamiltonian;
  /// Hartree, lowest first. Empty when the file carries none.
  std::vector<double> reference_energies;
  std::optional<double> hf_energy;
  nlohmann::json metadata = nlohmann::json::object();

  /// Computational basis index of the HF determinant (bit q = qubit q).
  std::uint64_t hf_index() const;
  /// `geometry` parsed as a number, if it is one.
  std::optional<double> bond_length() const;
  /// "interleaved" (even qubits alpha) unless metadata says "blocked".
  bool interleaved_spin_orbitals() const;
};

/// Throws ValidationError naming the first failed check.
void validate(const MoleculeFixture& fixture);

MoleculeFixture fixture_from_json(const nlohmann::json& doc);
nlohmann::json fixture_to_json(const MoleculeFixture& fixture);
MoleculeFixture load_fixture(const std::filesystem::path& path);
void save_fixture(const MoleculeFixture& fixture,
                  const std::filesystem::path& path);

/// [{"pauli": "XZ", "coeff": [re, im]}, ...] in canonical order.
nlohmann::json pauli_sum_to_json(const PauliSum& sum);
PauliSum pauli_sum_from_json(const nlohmann::json& terms, std::size_t n_qubits);

nlohmann::json projected_to_json(const ProjectedHamiltonian& h);
ProjectedHamiltonian projected_from_json(const nlohmann::json& doc);
void save_projected(const ProjectedHamiltonian& h,
                    const std::filesystem::path& path);
ProjectedHamiltonian load_projected(const std::filesystem::path& path);

/// Writes `doc` to `path`, throwing std::runtime_error on I/O failure.
void write_json(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace csvqd
