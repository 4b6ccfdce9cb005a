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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "csvqd/hamiltonian_io.hpp"
#include "csvqd/noncontextual.hpp"
#include "csvqd/oracle.hpp"
#include "csvqd/subspace.hpp"
#include "dense_oracle.hpp"
#include "nc_oracle.hpp"

namespace csvqd {
namespace {

const std::filesystem::path kFixtures = CSVQD_FIXTURE_DIR;

std::vector<PauliString> strings(std::initializer_list<const char*> s) {
  std::vector<PauliString> out;
  for (auto t : s) out.push_back(PauliString::parse(t));
  return out;
}

PauliSum sum(std::initializer_list<std::pair<const char*, double>> terms) {
  PauliSum h(PauliString::parse(terms.begin()->first).n_qubits());
  for (const auto& [p, c] : terms) h.add(PauliString::parse(p), c);
  return h;
}

// Transitivity of commutation on the non-universal terms, by enumeration.
bool brute_noncontextual(const std::vector<PauliString>& t) {
  std::vector<PauliString> rest;
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool universal = true;
    for (std::size_t j = 0; j < t.size(); ++j) universal &= commutes(t[i], t[j]);
    if (!universal) rest.push_back(t[i]);
  }
  for (const auto& a : rest) {
    for (const auto& b : rest) {
      for (const auto& c : rest) {
        if (commutes(a, b) && commutes(b, c) && !commutes(a, c)) return false;
      }
    }
  }
  return true;
}

TEST(IsNoncontextual, Examples) {
  EXPECT_TRUE(is_noncontextual(strings({"ZI", "IZ", "ZZ"})));
  EXPECT_TRUE(is_noncontextual(strings({"X", "Y", "Z"})));
  EXPECT_FALSE(is_noncontextual(strings({"XI", "ZI", "XX", "ZZ"})));
}

TEST(IsNoncontextual, AgreesWithEnumerationAndBuilder) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<PauliString> t;
    for (int k = 0; k < 2 + trial % 5; ++k) t.push_back(testing::random_string(rng, n, false));
    const bool expected = brute_noncontextual(t);
    EXPECT_EQ(is_noncontextual(t), expected);
    // The builder accepts a term exactly when the enlarged set stays
    // noncontextual, so its final set must pass the test.
    NoncontextualSetBuilder b(n);
    std::vector<PauliString> accepted;
    for (const auto& p : t) {
      std::vector<PauliString> trial_set = accepted;
      trial_set.push_back(p);
      const bool ok = b.try_add({p, 1.0});
      EXPECT_EQ(ok, brute_noncontextual(trial_set));
      if (ok) accepted.push_back(p);
    }
  }
}

TEST(IsNoncontextual, MonotoneUnderRemoval) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PauliString> t;
    for (int k = 0; k < 6; ++k) t.push_back(testing::random_string(rng, 2, false));
    if (!is_noncontextual(t)) continue;
    for (std::size_t drop = 0; drop < t.size(); ++drop) {
      auto sub = t;
      sub.erase(sub.begin() + static_cast<long>(drop));
      EXPECT_TRUE(is_noncontextual(sub));
    }
  }
}

TEST(Partition, DiagonalHamiltonianHasNoContextualPart) {
  const auto p = partition(sum({{"ZI", 0.5}, {"IZ", 0.25}, {"ZZ", -0.1}}));
  EXPECT_TRUE(p.contextual.empty());
}

TEST(Partition, SingleTerm) {
  const auto p = partition(sum({{"XY", 0.3}}));
  EXPECT_TRUE(p.contextual.empty());
  EXPECT_EQ(p.noncontextual.size(), 1u);
}

TEST(Partition, ConservesCoefficientsAndIsNoncontextual) {
  const auto f = load_fixture(kFixtures / "LiH_1.57473.json");
  const auto p = partition(f.hamiltonian);
  EXPECT_EQ(p.noncontextual + p.contextual, f.hamiltonian);
  for (const auto& [s, c] : p.noncontextual) EXPECT_EQ(p.contextual.coefficient(s), Complex(0.0));
  std::vector<PauliString> nc;
  for (const auto& [s, c] : p.noncontextual) nc.push_back(s);
  EXPECT_TRUE(is_noncontextual(nc));
  // Representatives anticommute pairwise; generators commute with every
  // noncontextual term.
  for (std::size_t i = 0; i < p.representatives.size(); ++i) {
    for (std::size_t j = i + 1; j < p.representatives.size(); ++j) {
      EXPECT_FALSE(commutes(p.representatives[i], p.representatives[j]));
    }
  }
  for (const auto& g : p.generators) {
    for (const auto& s : nc) EXPECT_TRUE(commutes(g, s));
  }
}

TEST(Partition, IsDeterministic) {
  const auto f = load_fixture(kFixtures / "BeH+_1.3447.json");
  EXPECT_EQ(partition(f.hamiltonian).contextual, partition(f.hamiltonian).contextual);
}

TEST(SolveNoncontextual, MinusZ) {
  const auto p = partition(sum({{"Z", -1.0}}));
  const auto sol = solve_noncontextual(p);
  EXPECT_NEAR(sol.energy, -1.0, 1e-12);
}

TEST(SolveNoncontextual, DiagonalMinimum) {
  const auto p = partition(sum({{"ZI", 0.5}, {"IZ", 0.25}}));
  EXPECT_NEAR(solve_noncontextual(p).energy, -0.75, 1e-12);
}

TEST(SolveNoncontextual, AnticommutingPairUsesUnitR) {
  // 0.6 X + 0.8 Z: the minimum over unit r is -1.
  const auto p = partition(sum({{"X", 0.6}, {"Z", 0.8}}));
  const auto sol = solve_noncontextual(p);
  EXPECT_NEAR(sol.energy, -1.0, 1e-12);
  double norm = 0.0;
  for (double v : sol.state.r) norm += v * v;
  EXPECT_NEAR(norm, 1.0, 1e-10);
}

TEST(SolveNoncontextual, H2MatchesBruteForceAndBoundsSpectrum) {
  const auto f = load_fixture(kFixtures / "H2_0.74.json");
  const auto p = partition(f.hamiltonian);
  const auto sol = solve_noncontextual(p);
  EXPECT_NEAR(sol.energy, testing::NoncontextualOracle(p).minimum(), 1e-6);
  EXPECT_NEAR(eta(p, sol.state), sol.energy, 1e-12);
  const double lmin = oracle::eigensolve_lowest(p.noncontextual, 1).eigenvalues[0];
  EXPECT_GE(sol.energy, lmin - 1e-8);
  EXPECT_NEAR(sol.energy, *f.hf_energy, 0.1);
  for (int v : sol.state.nu) EXPECT_TRUE(v == 1 || v == -1);
}

TEST(SolveNoncontextual, AnnealingMatchesEnumeration) {
  const auto f = load_fixture(kFixtures / "LiH_1.57473.json");
  const auto p = partition(f.hamiltonian);
  NoncontextualOptions anneal;
  anneal.exhaustive_limit = 0;
  EXPECT_NEAR(solve_noncontextual(p, anneal).energy, solve_noncontextual(p).energy, 1e-8);
}

TEST(SolveNoncontextual, ConstraintsRestrictTheSector) {
  // -Z alone prefers +1; forcing Z = -1 costs the full gap.
  const auto p = partition(sum({{"Z", -1.0}}));
  NoncontextualOptions o;
  o.constraints = {{PauliString::parse("Z"), -1}};
  EXPECT_NEAR(solve_noncontextual(p, o).energy, 1.0, 1e-12);
}

TEST(SolveNoncontextual, ConstrainedAnnealingStaysInTheHartreeFockSector) {
  for (const char* name : {"LiH_1.57473.json", "BeH+_1.3447.json"}) {
    SCOPED_TRACE(name);
    const auto f = load_fixture(kFixtures / name);
    const auto cs = prepare_contextual_subspace(f.hamiltonian, f.hf_index());
    NoncontextualOptions exact, anneal;
    exact.constraints = anneal.constraints = cs.sector;
    anneal.exhaustive_limit = 0;
    std::vector<std::pair<PauliString, int>> oracle_constraints;
    for (const auto& c : cs.sector) oracle_constraints.emplace_back(c.op, c.sign);
    const double want = testing::NoncontextualOracle(cs.partition).minimum(oracle_constraints);
    EXPECT_NEAR(solve_noncontextual(cs.partition, exact).energy, want, 1e-8);
    EXPECT_NEAR(solve_noncontextual(cs.partition, anneal).energy, want, 1e-8);
  }
}

}  // namespace
}  // namespace csvqd
