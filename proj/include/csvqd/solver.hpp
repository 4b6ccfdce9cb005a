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
#include <string>
#include <utility>
#include <vector>

#include "csvqd/ansatz.hpp"
#include "csvqd/hamiltonian_io.hpp"
#include "csvqd/optimizer.hpp"
#include "csvqd/statevector.hpp"
#include "csvqd/subspace.hpp"

namespace csvqd {

enum class OptimizerKind { nelder_mead, lbfgs };
enum class InitMode { zero, random };

struct SolverConfig {
  OptimizerKind optimizer = OptimizerKind::nelder_mead;
  OptimizerOptions options;
  /// Deflation weight; default 2 * sum |h_p| + 1 of the reduced Hamiltonian.
  std::optional<double> beta;
  InitMode init = InitMode::zero;
  std::uint64_t seed = 0;
  /// Converged states must overlap earlier ones by less than this.
  double overlap_threshold = 1e-4;
};

struct VQEResult {
  double energy = 0.0;
  std::vector<double> params;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct VQDResult {
  /// Hartree, in optimisation order (not sorted).
  std::vector<double> energies;
  std::vector<std::vector<double>> parameter_sets;
  /// Cost-function evaluations per state.
  std::vector<std::size_t> iteration_counts;
  /// |<psi_j|psi_k>|^2.
  std::vector<std::vector<double>> overlap_residuals;
  std::vector<double> beta_used;
  std::vector<bool> converged;
  /// State pairs closer than 1e-5 hartree with overlap above 1e-2.
  std::vector<std::pair<std::size_t, std::size_t>> near_degenerate;
  std::vector<Statevector> states;
};

double default_beta(const ProjectedHamiltonian& h);

/// Minimises <psi|reduced|psi> + offset over the circuit parameters.
VQEResult vqe(const ProjectedHamiltonian& h, const Circuit& circuit,
              const Statevector& input, std::vector<double> init,
              const SolverConfig& config = {});

/// Finds n_states states in order, each penalised by beta_j |<psi_j|psi>|^2
/// against the frozen earlier ones. `warm` optionally seeds each state.
VQDResult vqd(const ProjectedHamiltonian& h, const Circuit& circuit,
              const Statevector& input, std::size_t n_states,
              const SolverConfig& config = {},
              const std::vector<std::vector<double>>* warm = nullptr);

enum class AnsatzKind { uccsd, ryrz, nblock };
AnsatzKind parse_ansatz_kind(const std::string& name);
std::string to_string(AnsatzKind kind);

struct AnsatzConfig {
  AnsatzKind kind = AnsatzKind::uccsd;
  std::size_t repeats = 1;
  EntanglerLayout layout = EntanglerLayout::full;
};

/// The circuit for `kind` on a prepared subspace; HEAs start from the
/// reference's best basis state.
Ansatz make_ansatz(const MoleculeFixture& fixture, const ContextualSubspace& cs,
                   const AnsatzConfig& config);

struct RunConfig {
  AnsatzConfig ansatz;
  SolverConfig solver;
  std::size_t n_states = 2;
  SubspaceOptions subspace;
};

/// Energies as |E - reference| per state where a reference exists.
std::vector<double> energy_errors(const std::vector<double>& energies,
                                  const std::vector<double>& references);

struct SweepRow {
  std::size_t n_qubits = 0;
  VQDResult result;
  std::vector<double> errors;
  /// Set when the row could not be computed.
  std::optional<std::string> failure;
};

std::vector<SweepRow> qubit_sweep(const MoleculeFixture& fixture,
                                  const std::vector<std::size_t>& qubit_counts,
                                  const RunConfig& config);

struct PesPoint {
  std::string name;
  std::optional<double> bond_length;
  std::size_t n_qubits = 0;
  VQDResult result;
  std::vector<double> errors;
  std::optional<std::string> failure;
};

struct IterationStats {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Population mean and standard deviation.
IterationStats iteration_stats(const std::vector<double>& values);

struct PesScan {
  std::vector<PesPoint> points;
  /// Per state, over the successful points.
  std::vector<IterationStats> iterations;
  std::size_t total_evaluations = 0;
};

/// Sequential scan at `n_target` qubits; with warm_start each point starts
/// from the previous point's optimum for every state.
PesScan pes_scan(const std::vector<MoleculeFixture>& fixtures, std::size_t n_target,
                 const RunConfig& config, bool warm_start);

}  // namespace csvqd
