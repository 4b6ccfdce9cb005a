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
#include <numbers>
#include <random>

#include "csvqd/errors.hpp"
#include "csvqd/hamiltonian_io.hpp"
#include "csvqd/subspace.hpp"
#include "dense_oracle.hpp"

namespace csvqd {
namespace {

using testing::dense;
using testing::Mat;

const std::filesystem::path kFixtures = CSVQD_FIXTURE_DIR;

Mat dense_sequence(const RotationSequence& seq, std::size_t n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat u = Mat::Identity(dim, dim);
  for (const auto& s : seq.steps) u = testing::rotation(s.generator, s.angle) * u;
  return u;
}

// Restriction of a dense operator to the basis states that satisfy every
// Z-axis fix.
Mat dense_restrict(const Mat& m, std::span<const FixedQubit> fixed) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index b = 0; b < m.rows(); ++b) {
    bool ok = true;
    for (const auto& f : fixed) ok &= (((b >> f.qubit) & 1) == (f.sign < 0 ? 1 : 0));
    if (ok) idx.push_back(b);
  }
  Mat out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  }
  return out;
}

std::vector<double> spectrum(const ProjectedHamiltonian& p) {
  if (p.reduced.empty()) return std::vector<double>(std::size_t{1} << p.n_qubits(), p.offset);
  auto e = testing::eigenvalues(dense(p.reduced));
  for (auto& v : e) v += p.offset;
  return e;
}

RotationSequence random_sequence(std::mt19937_64& rng, std::size_t n, std::size_t len) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  RotationSequence seq;
  for (std::size_t k = 0; k < len; ++k) {
    auto g = testing::random_string(rng, n, false);
    if (g.is_identity()) continue;
    seq.steps.push_back({g, angle(rng)});
  }
  return seq;
}

TEST(Symmetries, ExamplesCommuteWithEveryTerm) {
  PauliSum h(2);
  h.add(PauliString::parse("XX"));
  h.add(PauliString::parse("ZZ"));
  const auto syms = find_z2_symmetries(h);
  EXPECT_EQ(syms.size(), 2u);
  const Mat dh = dense(h);
  for (const auto& s : syms) {
    EXPECT_LT((dense(s) * dh - dh * dense(s)).cwiseAbs().maxCoeff(), 1e-14);
  }
  const auto x = find_z2_symmetries(PauliSum(PauliString::parse("X")));
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x[0].without_phase(), PauliString::parse("X"));
}

TEST(Symmetries, H2HasAtLeastTwo) {
  const auto f = load_fixture(kFixtures / "H2_0.74.json");
  const auto syms = find_z2_symmetries(f.hamiltonian);
  EXPECT_GE(syms.size(), 2u);
  const Mat dh = dense(f.hamiltonian);
  for (const auto& s : syms) {
    EXPECT_LT((dense(s) * dh - dh * dense(s)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Rotations, CliffordTargetLandsOnRequestedQubit) {
  const std::vector<RotationTarget> t = {{PauliString::parse("ZZ"), 0, 'Z'}};
  const auto seq = build_rotations(t);
  EXPECT_EQ(seq.size(), 2u);
  const Mat u = dense_sequence(seq, 2);
  const Mat image = u * dense(PauliString::parse("ZZ")) * u.adjoint();
  const Mat target = dense(PauliString::parse("ZI"));
  EXPECT_LT(std::min((image - target).cwiseAbs().maxCoeff(),
                     (image + target).cwiseAbs().maxCoeff()),
            1e-10);
}

TEST(Rotations, AlreadyPlacedTargetNeedsNoSteps) {
  const std::vector<RotationTarget> t = {{PauliString::parse("IZ"), 1, 'Z'}};
  EXPECT_TRUE(build_rotations(t).empty());
}

TEST(Rotations, RandomCommutingTargetsBecomeSingleQubit) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 4;
    std::vector<RotationTarget> targets;
    std::vector<PauliString> ops;
    for (int attempt = 0; attempt < 20 && targets.size() < n - 1; ++attempt) {
      const auto p = testing::random_string(rng, n, false);
      if (p.is_identity()) continue;
      bool ok = true;
      for (const auto& o : ops) ok &= commutes(o, p);
      if (!ok) continue;
      // Independence over GF(2): p must not be a product of earlier targets.
      bool dependent = false;
      for (std::uint64_t m = 0; m < (1ULL << ops.size()) && !dependent; ++m) {
        PauliString prod(n);
        for (std::size_t i = 0; i < ops.size(); ++i) {
          if ((m >> i) & 1) prod = prod * ops[i];
        }
        dependent = prod.without_phase() == p.without_phase();
      }
      if (dependent) continue;
      ops.push_back(p);
      targets.push_back({p, std::nullopt, "XYZ"[trial % 3]});
    }
    std::vector<std::size_t> placed;
    const auto seq = build_rotations(targets, std::nullopt, &placed);
    const Mat u = dense_sequence(seq, n);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const Mat image = u * dense(targets[k].op) * u.adjoint();
      const Mat single = dense(PauliString::single(n, placed[k], targets[k].axis));
      EXPECT_LT(std::min((image - single).cwiseAbs().maxCoeff(),
                         (image + single).cwiseAbs().maxCoeff()),
                1e-10);
    }
  }
}

TEST(Rotations, DependentOrAnticommutingTargetsRejected) {
  const std::vector<RotationTarget> dep = {{PauliString::parse("ZI"), std::nullopt, 'Z'},
                                           {PauliString::parse("IZ"), std::nullopt, 'Z'},
                                           {PauliString::parse("ZZ"), std::nullopt, 'Z'}};
  EXPECT_THROW(build_rotations(dep), RankError);
  const std::vector<RotationTarget> anti = {{PauliString::parse("X"), std::nullopt, 'Z'},
                                            {PauliString::parse("Z"), std::nullopt, 'Z'}};
  EXPECT_THROW(build_rotations(anti), ContractError);
}

TEST(Rotations, UnitaryPartitioningCollapsesTheCliqueOperator) {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> gauss;
  // Three pairwise anticommuting strings on two qubits.
  const std::vector<PauliString> reps = {PauliString::parse("XZ"), PauliString::parse("ZI"),
                                         PauliString::parse("YZ")};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> r(3);
    double norm = 0.0;
    for (auto& v : r) norm += (v = gauss(rng)) * v;
    for (auto& v : r) v /= std::sqrt(norm);
    const std::size_t d = static_cast<std::size_t>(trial % 3);
    const auto seq = unitary_partitioning(reps, r, d);
    Mat big_r = Mat::Zero(4, 4);
    for (std::size_t i = 0; i < 3; ++i) big_r += r[i] * dense(reps[i]);
    const Mat u = dense_sequence(seq, 2);
    EXPECT_LT((u * big_r * u.adjoint() - dense(reps[d])).cwiseAbs().maxCoeff(), 1e-10);
  }
  const std::vector<double> unit = {1.0, 0.0, 0.0};
  EXPECT_TRUE(unitary_partitioning(reps, unit, 0).empty());
}

TEST(Rotations, RandomSequencesPreserveSpectrum) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto h = testing::random_hermitian(rng, n, 8);
    const auto seq = random_sequence(rng, n, 6);
    const auto a = testing::eigenvalues(dense(h));
    const auto b = testing::eigenvalues(dense(seq.apply(h)));
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-8);
  }
}

TEST(Rotations, InverseUndoes) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto h = testing::random_hermitian(rng, n, 6);
    const auto seq = random_sequence(rng, n, 5);
    const auto back = seq.inverse().apply(seq.apply(h));
    EXPECT_LT((dense(back) - dense(h)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Rotations, StateAndOperatorPicturesAgree) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto seq = random_sequence(rng, n, 4);
    const auto psi = testing::random_state(rng, n);
    Statevector moved = psi;
    seq.apply_to_state(moved);
    const testing::Vec expected = dense_sequence(seq, n) * dense(psi);
    EXPECT_LT((dense(moved) - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Project, SpecExample) {
  PauliSum h(2);
  h.add(PauliString::parse("ZZ"));
  h.add(PauliString::parse("XI"), 0.5);
  const std::vector<FixedQubit> fixed = {{1, 'Z', 1}};
  const auto p = project(h, {}, fixed);
  PauliSum expected(1);
  expected.add(PauliString::parse("Z"));
  expected.add(PauliString::parse("X"), 0.5);
  EXPECT_EQ(p.reduced, expected);
  EXPECT_EQ(p.n_qubits(), 1u);
  const auto oracle = testing::eigenvalues(dense_restrict(dense(h), fixed));
  const auto got = spectrum(p);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], oracle[i], 1e-12);
}

TEST(Project, NoFixesKeepsRotatedOperator) {
  std::mt19937_64 rng(53);
  const auto h = testing::random_hermitian(rng, 3, 6);
  const auto seq = random_sequence(rng, 3, 3);
  const auto p = project(h, seq, {});
  auto rotated = seq.apply(h);
  const Complex id = rotated.identity_coefficient();
  rotated.add(PauliString(3), -id);
  EXPECT_LT((dense(p.reduced) - dense(rotated.prune())).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(p.offset, id.real(), 1e-14);
}

TEST(Project, FixingEverythingLeavesAnOffset) {
  PauliSum h(2);
  h.add(PauliString::parse("ZZ"), 0.7);
  h.add(PauliString::parse("ZI"), -0.2);
  h.add(PauliString::parse("XX"), 0.4);
  h.add(PauliString(2), 1.5);
  const std::vector<FixedQubit> fixed = {{0, 'Z', -1}, {1, 'Z', 1}};
  const auto p = project(h, {}, fixed, 0.25);
  EXPECT_TRUE(p.reduced.empty());
  // <10| h |10> + 0.25
  EXPECT_NEAR(p.offset, -0.7 + 0.2 + 1.5 + 0.25, 1e-14);
}

TEST(Project, RandomProjectionsMatchDenseRestriction) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto h = testing::random_hermitian(rng, n, 10);
    const auto seq = random_sequence(rng, n, 3);
    std::vector<FixedQubit> fixed;
    for (std::size_t q = 0; q < n; ++q) {
      if (rng() % 2 && fixed.size() + 1 < n) fixed.push_back({q, 'Z', rng() % 2 ? 1 : -1});
    }
    const Mat u = dense_sequence(seq, n);
    const Mat rotated = u * dense(h) * u.adjoint();
    // The Z-fix projection keeps only the Z-block-diagonal part, which has
    // the same restricted matrix.
    const auto oracle = testing::eigenvalues(dense_restrict(rotated, fixed));
    const auto got = spectrum(project(h, seq, fixed));
    ASSERT_EQ(got.size(), oracle.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], oracle[i], 1e-8);
  }
}

TEST(Project, RejectsBadFixes) {
  const PauliSum h(PauliString::parse("ZZ"));
  const std::vector<FixedQubit> twice = {{0, 'Z', 1}, {0, 'Z', 1}};
  EXPECT_THROW(project(h, {}, twice), ContractError);
  const std::vector<FixedQubit> out_of_range = {{2, 'Z', 1}};
  EXPECT_THROW(project(h, {}, out_of_range), DimensionError);
  const std::vector<FixedQubit> bad_sign = {{0, 'Z', 0}};
  EXPECT_THROW(project(h, {}, bad_sign), ContractError);
}

TEST(Pool, CommutingSurvivesAnticommutingDropped) {
  const std::vector<FixedQubit> fixed = {{1, 'Z', -1}};
  const std::vector<PauliSum> pool = {PauliSum(PauliString::parse("XZ")),
                                      PauliSum(PauliString::parse("XX"))};
  const auto out = project_operator_pool(pool, {}, fixed);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], PauliSum(PauliString::parse("X")) * Complex(-1.0));
}

double min_over_sectors(const PauliSum& h, const std::vector<PauliString>& syms) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m < (1ULL << syms.size()); ++m) {
    std::vector<int> signs;
    for (std::size_t k = 0; k < syms.size(); ++k) signs.push_back((m >> k) & 1 ? -1 : 1);
    best = std::min(best, spectrum(taper(h, syms, signs)).front());
  }
  return best;
}

TEST(Taper, BestSectorIsExactOnH2) {
  const auto f = load_fixture(kFixtures / "H2_0.74.json");
  const auto syms = find_z2_symmetries(f.hamiltonian);
  const double full = testing::eigenvalues(dense(f.hamiltonian)).front();
  EXPECT_NEAR(min_over_sectors(f.hamiltonian, syms), full, 1e-10);
  // The HF sector holds the ground state for H2.
  const auto sector = hf_sector(syms, f.hf_index());
  std::vector<int> signs;
  for (const auto& s : sector) signs.push_back(s.sign);
  EXPECT_NEAR(spectrum(taper(f.hamiltonian, syms, signs)).front(), full, 1e-10);
}

TEST(Taper, SectorSpectraTileTheFullSpectrum) {
  std::mt19937_64 rng(61);
  // A random Hamiltonian built from strings commuting with ZZZ and XXII-type
  // symmetries.
  const std::vector<PauliString> syms = {PauliString::parse("ZZZ")};
  PauliSum h(3);
  while (h.size() < 8) {
    const auto p = testing::random_string(rng, 3, false);
    if (commutes(p, syms[0])) h.add(p, std::uniform_real_distribution<double>(-1, 1)(rng));
  }
  std::vector<double> tiles;
  for (int s : {1, -1}) {
    const std::vector<int> signs = {s};
    for (double e : spectrum(taper(h, syms, signs))) tiles.push_back(e);
  }
  std::sort(tiles.begin(), tiles.end());
  const auto full = testing::eigenvalues(dense(h));
  ASSERT_EQ(tiles.size(), full.size());
  for (std::size_t i = 0; i < full.size(); ++i) EXPECT_NEAR(tiles[i], full[i], 1e-10);
}

TEST(Stabilizers, FullWidthTargetSelectsNothing) {
  const auto f = load_fixture(kFixtures / "H2_0.74.json");
  const auto cs = build_contextual_subspace(f.hamiltonian, f.hf_index(), f.n_qubits);
  EXPECT_TRUE(cs.selection.chosen.empty());
  EXPECT_EQ(cs.projected.n_qubits(), f.n_qubits);
  EXPECT_NEAR(spectrum(cs.projected).front(),
              testing::eigenvalues(dense(f.hamiltonian)).front(), 1e-10);
}

TEST(Stabilizers, InfeasibleTargetIsARangeError) {
  const auto f = load_fixture(kFixtures / "H2_0.74.json");
  EXPECT_THROW(build_contextual_subspace(f.hamiltonian, f.hf_index(), f.n_qubits + 1),
               RangeError);
  const auto prepared = prepare_contextual_subspace(f.hamiltonian, f.hf_index());
  StabilizerOptions so;
  so.symmetries = prepared.sector;
  const std::size_t most = max_stabilizers(prepared.partition, so);
  if (most < f.n_qubits) {
    EXPECT_THROW(reduce_to(prepared, f.hamiltonian, f.hf_index(), f.n_qubits - most - 1),
                 RangeError);
  }
}

TEST(Stabilizers, CandidatesAreRankedLeastDestructiveFirst) {
  const auto f = load_fixture(kFixtures / "LiH_1.57473.json");
  const auto cs = build_contextual_subspace(f.hamiltonian, f.hf_index(), 4);
  const auto& c = cs.selection.candidates;
  for (std::size_t i = 1; i < c.size(); ++i) {
    EXPECT_LE(c[i - 1].deleted_weight, c[i].deleted_weight + 1e-12);
  }
  EXPECT_EQ(cs.selection.chosen.size(), f.n_qubits - 4);
  EXPECT_EQ(cs.projected.n_qubits(), 4u);
  EXPECT_TRUE(cs.projected.reduced.is_hermitian());
}

TEST(Stabilizers, FixedQubitsAreEigenstatesOfTheRotatedStabilizers) {
  const auto f = load_fixture(kFixtures / "BeH+_1.3447.json");
  const auto cs = build_contextual_subspace(f.hamiltonian, f.hf_index(), 5);
  const std::size_t n = f.n_qubits;
  const Mat u = dense_sequence(cs.selection.rotations, n);
  for (std::size_t k = 0; k < cs.selection.chosen.size(); ++k) {
    const auto& c = cs.selection.chosen[k];
    if (c.source == StabilizerSource::clique) continue;
    const auto& fq = cs.selection.fixed[k];
    const Mat image = u * dense(c.op) * u.adjoint();
    const Mat want = double(fq.sign * c.sign) * dense(PauliString::single(n, fq.qubit, 'Z'));
    EXPECT_LT((image - want).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Reference, HartreeFockProjectsToABasisState) {
  const auto f = load_fixture(kFixtures / "H2_0.74.json");
  const auto cs = build_contextual_subspace(f.hamiltonian, f.hf_index(), 1);
  EXPECT_EQ(cs.projected.n_qubits(), 1u);
  EXPECT_NEAR(cs.reference.state.norm(), 1.0, 1e-12);
  EXPECT_NEAR(spectrum(cs.projected).front(),
              testing::eigenvalues(dense(f.hamiltonian)).front(), 1e-10);
}

TEST(Reference, ProjectStateMatchesDenseRestriction) {
  std::mt19937_64 rng(67);
  const auto seq = random_sequence(rng, 3, 3);
  const std::vector<FixedQubit> fixed = {{1, 'Z', -1}};
  const auto p = project(testing::random_hermitian(rng, 3, 4), seq, fixed);
  const auto psi = testing::random_state(rng, 3);
  const testing::Vec moved = dense_sequence(seq, 3) * dense(psi);
  const auto reduced = project_state(psi, p);
  // kept qubits are 0 and 2; qubit 1 is pinned to |1>.
  for (std::uint64_t j = 0; j < 4; ++j) {
    const std::uint64_t full = (j & 1) | 0b010 | ((j >> 1) << 2);
    EXPECT_LT(std::abs(reduced[j] - moved(static_cast<Eigen::Index>(full))), 1e-12);
  }
}

}  // namespace
}  // namespace csvqd
