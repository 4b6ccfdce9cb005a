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

#include <random>

#include "csvqd/errors.hpp"
#include "csvqd/pauli.hpp"
#include "dense_oracle.hpp"

namespace csvqd {
namespace {

using testing::dense;

std::vector<PauliString> all_strings(std::size_t n) {
  std::vector<PauliString> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    std::string s;
    std::size_t c = code;
    for (std::size_t q = 0; q < n; ++q, c /= 4) s += "IXYZ"[c % 4];
    for (unsigned ph = 0; ph < 4; ++ph) out.push_back(PauliString::parse(s).with_phase(ph));
  }
  return out;
}

TEST(PauliString, ParseAndPrint) {
  const auto p = PauliString::parse("XIZY");
  EXPECT_EQ(p.n_qubits(), 4u);
  EXPECT_EQ(p.at(0), 'X');
  EXPECT_EQ(p.at(2), 'Z');
  EXPECT_EQ(p.at(3), 'Y');
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_EQ(p.letters(), "XIZY");
  EXPECT_EQ(PauliString::parse("-iXY").to_string(), "-iXY");
  EXPECT_EQ(PauliString::parse("+ZZ"), PauliString::parse("ZZ"));
  EXPECT_THROW(PauliString::parse("XQ"), std::exception);
}

TEST(PauliString, YIsIXZ) {
  const auto y = PauliString::parse("Y");
  const auto x = PauliString::parse("X"), z = PauliString::parse("Z");
  EXPECT_EQ(multiply(x, z).with_phase(multiply(x, z).phase() + 1), y);
}

TEST(PauliString, ExhaustiveProductsMatchDense) {
  for (std::size_t n : {1u, 2u}) {
    const auto all = all_strings(n);
    for (const auto& a : all) {
      for (const auto& b : all) {
        const auto ab = multiply(a, b);
        EXPECT_LT((dense(ab) - dense(a) * dense(b)).cwiseAbs().maxCoeff(), 1e-15)
            << a.to_string() << " * " << b.to_string();
        const bool dense_commute =
            (dense(a) * dense(b) - dense(b) * dense(a)).cwiseAbs().maxCoeff() < 1e-15;
        EXPECT_EQ(commutes(a, b), dense_commute);
      }
    }
  }
}

TEST(PauliString, RandomProductsMatchDense) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto a = testing::random_string(rng, n, true);
    const auto b = testing::random_string(rng, n, true);
    EXPECT_LT((dense(a * b) - dense(a) * dense(b)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(PauliString, WidthMismatchThrows) {
  EXPECT_THROW(multiply(PauliString::parse("X"), PauliString::parse("XX")), DimensionError);
  EXPECT_THROW(PauliString(65), DimensionError);
}

TEST(PauliString, CanonicalOrderIsZThenXFromQubitZero) {
  CanonicalOrder less;
  EXPECT_TRUE(less(PauliString::parse("II"), PauliString::parse("IZ")));
  EXPECT_TRUE(less(PauliString::parse("IZ"), PauliString::parse("ZI")));
  EXPECT_TRUE(less(PauliString::parse("ZI"), PauliString::parse("ZZ")));
  EXPECT_TRUE(less(PauliString::parse("XI"), PauliString::parse("ZI")));
}

TEST(PauliSum, FoldsPhasesAndPrunes) {
  PauliSum h(2);
  h.add(PauliString::parse("iXY"), 2.0);
  EXPECT_EQ(h.coefficient(PauliString::parse("XY")), Complex(0.0, 2.0));
  h.add(PauliString::parse("XY"), Complex(0.0, -2.0));
  h.prune();
  EXPECT_TRUE(h.empty());
}

TEST(PauliSum, AlgebraMatchesDense) {
  std::mt19937_64 rng(3);
  const auto a = testing::random_hermitian(rng, 3, 6);
  const auto b = testing::random_hermitian(rng, 3, 6);
  EXPECT_LT((dense(a * b) - dense(a) * dense(b)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((dense(a + b) - dense(a) - dense(b)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(a.is_hermitian());
  EXPECT_FALSE((a * Complex(0, 1)).is_hermitian());
  EXPECT_EQ(a.adjoint(), a);
}

TEST(PauliSum, L1NormSkipsIdentityByDefault) {
  PauliSum h(1);
  h.add(PauliString(1), -3.0);
  h.add(PauliString::parse("Z"), 0.5);
  EXPECT_DOUBLE_EQ(h.l1_norm(), 0.5);
  EXPECT_DOUBLE_EQ(h.l1_norm(true), 3.5);
}

TEST(Conjugation, RotationMatchesDense) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto h = testing::random_hermitian(rng, n, 5);
    const auto g = testing::random_string(rng, n, false);
    const double t = angle(rng);
    const auto r = testing::rotation(g, t);
    const testing::Mat expected = r * dense(h) * r.adjoint();
    EXPECT_LT((dense(conjugate_by_rotation(h, g, t)) - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Conjugation, CliffordAnglesAreExact) {
  const auto g = PauliString::parse("XY");
  const auto p = PauliString::parse("ZI");
  const auto image = conjugate_by_rotation(PauliSum(p), g, std::numbers::pi / 2);
  ASSERT_EQ(image.size(), 1u);
  const auto [q, c] = *image.begin();
  EXPECT_EQ(std::abs(c.real()), 1.0);
  EXPECT_EQ(c.imag(), 0.0);
  const auto single = clifford_conjugate(p, g, std::numbers::pi / 2);
  EXPECT_EQ(PauliSum(single), image);
  EXPECT_THROW(clifford_conjugate(p, g, 0.3), ContractError);
}

TEST(Conjugation, NonHermitianGeneratorRejected) {
  EXPECT_THROW(conjugate_by_rotation(PauliSum(PauliString::parse("Z")),
                                     PauliString::parse("iX"), 0.1),
               ContractError);
}

TEST(DenseOracle, EntrywiseAndKroneckerFormsAgree) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::random_string(rng, 6, true);
    testing::Mat m = testing::Mat::Zero(64, 64);
    testing::add_term(m, p, 1.0);
    EXPECT_EQ((m - dense(p)).cwiseAbs().maxCoeff(), 0.0);
  }
}

}  // namespace
}  // namespace csvqd
