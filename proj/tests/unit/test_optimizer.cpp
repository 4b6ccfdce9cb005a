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

#include <cmath>

#include "csvqd/optimizer.hpp"

namespace csvqd {
namespace {

double rosenbrock(std::span<const double> x) {
  return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
}

double rosenbrock_grad(std::span<const double> x, std::span<double> g) {
  g[0] = -400 * x[0] * (x[1] - x[0] * x[0]) - 2 * (1 - x[0]);
  g[1] = 200 * (x[1] - x[0] * x[0]);
  return rosenbrock(x);
}

TEST(NelderMead, QuadraticBowl) {
  auto f = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * std::pow(x[i] - 0.3, 2);
    return s;
  };
  const auto r = nelder_mead(f, std::vector<double>(5, 0.0));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.value, 1e-8);
  for (double v : r.x) EXPECT_NEAR(v, 0.3, 1e-3);
}

TEST(NelderMead, Rosenbrock) {
  OptimizerOptions o;
  o.tolerance = 1e-12;
  const auto r = nelder_mead(rosenbrock, {-1.2, 1.0}, o);
  EXPECT_LT(r.value, 1e-8);
}

TEST(NelderMead, BudgetIsRespected) {
  OptimizerOptions o;
  o.max_evaluations = 30;
  const auto r = nelder_mead(rosenbrock, {-1.2, 1.0}, o);
  EXPECT_LE(r.evaluations, 30u);
  EXPECT_FALSE(r.converged);
}

TEST(Lbfgs, Rosenbrock) {
  const auto r = lbfgs(rosenbrock_grad, {-1.2, 1.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

TEST(Lbfgs, StationaryStartStopsImmediately) {
  auto f = [](std::span<const double> x, std::span<double> g) {
    g[0] = 2 * x[0];
    return x[0] * x[0];
  };
  const auto r = lbfgs(f, {0.0});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.evaluations, 1u);
}

}  // namespace
}  // namespace csvqd
