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

#include "csvqd/noncontextual.hpp"
#include "csvqd/pauli.hpp"
#include "csvqd/statevector.hpp"

namespace csvqd {

/// R = exp(-i angle/2 generator).
struct RotationStep {
  PauliString generator;
  double angle = 0.0;
};

/// U = R_last ... R_first. Conjugation applies steps front to back, so
/// apply(H) = U H U^dagger; the same order evolves states, U|psi>.
struct RotationSequence {
  std::vector<RotationStep> steps;
  /// Steps before this index are Clifford (angle +-pi/2).
  std::size_t clifford_prefix_len = 0;

  bool empty() const noexcept { return steps.empty(); }
  std::size_t size() const noexcept { return steps.size(); }
  PauliSum apply(const PauliSum& h) const;
  /// Reverse order, negated angles.
  RotationSequence inverse() const;
  void apply_to_state(Statevector& state) const;
};

struct FixedQubit {
  std::size_t qubit = 0;
  char axis = 'Z';
  int sign = 1;
};

/// reduced + offset * I is the Hamiltonian on the kept qubits. `reduced`
/// never carries an identity term.
struct ProjectedHamiltonian {
  PauliSum reduced;
  double offset = 0.0;
  std::vector<FixedQubit> fixed_positions;
  std::size_t source_qubits = 0;
  /// Maps the source frame into the one the fixed positions refer to.
  RotationSequence rotations;

  std::size_t n_qubits() const noexcept {
    return source_qubits - fixed_positions.size();
  }
  /// Source qubit of each reduced qubit, ascending.
  std::vector<std::size_t> kept_qubits() const;
  /// reduced + offset * I.
  PauliSum total() const;
};

/// Independent non-identity Pauli strings commuting with every term of `h`.
std::vector<PauliString> find_z2_symmetries(const PauliSum& h);

/// Eigenvalue of a diagonal Hermitian string on basis state |index>.
int diagonal_value(const PauliString& p, std::uint64_t index);

/// A stabilizer to be rotated onto a single-qubit Pauli. `qubit` empty means
/// "highest unused qubit in the current support".
struct RotationTarget {
  PauliString op;
  std::optional<std::size_t> qubit;
  char axis = 'Z';
};

/// Clifford sequence taking each target to +-sigma_axis on its qubit.
/// Throws ContractError on anticommuting targets, RankError on dependent ones.
/// `placed` receives the chosen qubit of every target.
RotationSequence clifford_rotations(std::span<const RotationTarget> targets,
                                    std::vector<std::size_t>* placed = nullptr);

/// Rotations taking R = sum_k r_k C_k (mutually anticommuting, phase-free C_k)
/// to |r| C_d, one component at a time in index order. Components with
/// |r_k| < 1e-12 are skipped.
RotationSequence unitary_partitioning(std::span<const PauliString> reps,
                                      std::span<const double> r,
                                      std::size_t designated);

/// Clifford reduction of `targets`, optionally preceded by the unitary
/// partitioning of a clique operator whose designated member is among the
/// targets. The result's Clifford part comes first.
struct CliqueOperator {
  std::vector<PauliString> reps;
  std::vector<double> r;
  std::size_t designated = 0;
};
RotationSequence build_rotations(std::span<const RotationTarget> targets,
                                 const std::optional<CliqueOperator>& clique = {},
                                 std::vector<std::size_t>* placed = nullptr);

/// Rotates `h`, drops terms anticommuting with a fixed Pauli, substitutes the
/// sector sign elsewhere and removes the fixed qubits.
ProjectedHamiltonian project(const PauliSum& h, const RotationSequence& rotations,
                             std::span<const FixedQubit> fixed, double offset = 0.0);

/// Same transformation per element; identity parts discarded, empty results
/// removed.
std::vector<PauliSum> project_operator_pool(std::span<const PauliSum> pool,
                                            const RotationSequence& rotations,
                                            std::span<const FixedQubit> fixed);

/// Plain Z2 tapering with the given sector signs.
ProjectedHamiltonian taper(const PauliSum& h, std::span<const PauliString> symmetries,
                           std::span<const int> signs);

/// HF-state eigenvalues of the diagonal symmetries; others are dropped.
std::vector<SectorConstraint> hf_sector(std::span<const PauliString> symmetries,
                                        std::uint64_t hf_index);

enum class StabilizerSource { symmetry, generator, clique };

struct StabilizerCandidate {
  StabilizerSource source = StabilizerSource::generator;
  /// Index into the symmetry, generator list; designated clique otherwise.
  std::size_t index = 0;
  PauliString op;
  int sign = 1;
  /// Sum of |coeff| over contextual terms the stabilizer would remove.
  double deleted_weight = 0.0;
};

struct StabilizerOptions {
  /// True symmetries and the sectors to fix them in.
  std::vector<SectorConstraint> symmetries;
  /// Explicit candidate indices (into the ranked list) in priority order.
  std::optional<std::vector<std::size_t>> explicit_order;
};

struct StabilizerSelection {
  /// Every candidate, least destructive first.
  std::vector<StabilizerCandidate> candidates;
  std::vector<StabilizerCandidate> chosen;
  RotationSequence rotations;
  std::vector<FixedQubit> fixed;
};

/// Picks source_qubits - n_target independent stabilizers and the rotations
/// and sectors that enforce them. Throws RangeError when fewer independent
/// candidates exist.
StabilizerSelection choose_stabilizers(const PauliSum& h,
                                       const NoncontextualPartition& partition,
                                       const NoncontextualState& state,
                                       std::size_t n_target,
                                       const StabilizerOptions& options = {});

/// Number of independent stabilizer candidates, i.e. the smallest reachable
/// qubit count is source_qubits minus this.
std::size_t max_stabilizers(const NoncontextualPartition& partition,
                            const StabilizerOptions& options);

/// U|psi> restricted to the fixed sectors, in reduced-register order.
/// Only Z-axis fixed positions are supported. Not normalised.
Statevector project_state(const Statevector& full, const ProjectedHamiltonian& h);

/// The HF determinant pushed into the subspace. When it projects to (near)
/// zero the basis state carrying the largest rotated amplitude is used.
struct SubspaceReference {
  Statevector state;
  /// Best computational basis state of the reduced register.
  std::uint64_t bitstring = 0;
  double projected_norm = 0.0;
  bool fell_back = false;
};
SubspaceReference reference_state(std::uint64_t hf_index,
                                  const ProjectedHamiltonian& h);

struct SubspaceOptions {
  PartitionStrategy strategy = PartitionStrategy::greedy_diagonal_seed;
  NoncontextualOptions noncontextual;
  std::optional<std::vector<std::size_t>> explicit_order;
};

/// Everything produced on the way from H to its contextual subspace.
struct ContextualSubspace {
  std::vector<PauliString> symmetries;
  std::vector<SectorConstraint> sector;
  NoncontextualPartition partition;
  NoncontextualSolution noncontextual;
  StabilizerSelection selection;
  ProjectedHamiltonian projected;
  SubspaceReference reference;
};

/// Symmetries, HF sector, partition and noncontextual solution; everything
/// that does not depend on the target qubit count.
ContextualSubspace prepare_contextual_subspace(const PauliSum& h,
                                               std::uint64_t hf_index,
                                               const SubspaceOptions& options = {});
/// Completes a prepared subspace for `n_target` qubits.
ContextualSubspace reduce_to(const ContextualSubspace& prepared, const PauliSum& h,
                             std::uint64_t hf_index, std::size_t n_target,
                             const std::optional<std::vector<std::size_t>>&
                                 explicit_order = std::nullopt);
ContextualSubspace build_contextual_subspace(const PauliSum& h,
                                             std::uint64_t hf_index,
                                             std::size_t n_target,
                                             const SubspaceOptions& options = {});

std::string to_string(StabilizerSource source);

}  // namespace csvqd
