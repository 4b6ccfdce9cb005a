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
#include <vector>

#include "csvqd/pauli.hpp"

namespace csvqd {

/// A real-weighted Pauli term. Strings are phase-free.
struct WeightedPauli {
  PauliString pauli;
  double coeff = 0.0;
};

/// Kirby-Love test: after discarding strings that commute with every other
/// string, commutation on the remainder must be transitive.
bool is_noncontextual(std::span<const PauliString> terms);

/// Incremental form of the same test, used to grow a noncontextual set one
/// term at a time in O(set size) per attempt.
class NoncontextualSetBuilder {
 public:
  explicit NoncontextualSetBuilder(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  /// Adds `term` if the enlarged set is still noncontextual.
  bool try_add(const WeightedPauli& term);

  const std::vector<WeightedPauli>& universal() const noexcept {
    return universal_;
  }
  const std::vector<std::vector<WeightedPauli>>& cliques() const noexcept {
    return cliques_;
  }

 private:
  std::size_t n_qubits_;
  std::vector<WeightedPauli> universal_;
  std::vector<std::vector<WeightedPauli>> cliques_;
};

enum class PartitionStrategy {
  /// Seed with every diagonal term, then add the rest by descending
  /// |coefficient| while the set stays noncontextual.
  greedy_diagonal_seed,
  /// Diagonal terms only.
  diagonal_only,
};

/// H = H_nc + H_c with the noncontextual structure of H_nc.
struct NoncontextualPartition {
  std::size_t n_qubits = 0;
  /// Terms commuting with every other noncontextual term (identity included).
  std::vector<WeightedPauli> symmetry_terms;
  /// Commuting classes of the remainder; classes mutually anticommute.
  std::vector<std::vector<WeightedPauli>> cliques;
  /// One representative C_i per clique (its largest-|coeff| member).
  std::vector<PauliString> representatives;
  /// Independent commuting generators of the group spanned by the symmetry
  /// terms and the products c * C_i for every clique member c.
  std::vector<PauliString> generators;
  PauliSum noncontextual;
  PauliSum contextual;

  std::size_t clique_count() const noexcept { return cliques.size(); }
};

NoncontextualPartition partition(
    const PauliSum& h,
    PartitionStrategy strategy = PartitionStrategy::greedy_diagonal_seed);

/// Classical value assignment: nu over generators, r over cliques.
struct NoncontextualState {
  std::vector<int> nu;
  std::vector<double> r;
};

/// Requires `op` (if it lies in the generator group) to take value `sign`.
struct SectorConstraint {
  PauliString op;
  int sign = 1;
};

struct NoncontextualOptions {
  /// Exhaustive nu enumeration up to this many generators, annealing beyond.
  std::size_t exhaustive_limit = 20;
  std::size_t annealing_restarts = 8;
  std::size_t annealing_sweeps = 4000;
  std::uint64_t seed = 7;
  std::vector<SectorConstraint> constraints;
};

struct NoncontextualSolution {
  double energy = 0.0;
  NoncontextualState state;
};

/// eta(nu, r): the noncontextual energy of a value assignment.
double eta(const NoncontextualPartition& p, const NoncontextualState& state);

/// Minimises eta. For each nu the optimal r is r = -a / |a| with
/// a_i = sum over clique i of coeff * value(c * C_i), giving
/// eta = sum_sym coeff * value - |a|. Ties resolve to the lexicographically
/// smallest nu.
NoncontextualSolution solve_noncontextual(const NoncontextualPartition& p,
                                          const NoncontextualOptions& options = {});

/// Value of `op` under nu when `op` lies in the generator group.
std::optional<int> generator_value(const NoncontextualPartition& p,
                                   const std::vector<int>& nu,
                                   const PauliString& op);

}  // namespace csvqd
