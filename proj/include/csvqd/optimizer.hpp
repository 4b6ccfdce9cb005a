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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace csvqd {

struct OptimizerOptions {
  /// Cost-function evaluations allowed per run, restarts included.
  std::size_t max_evaluations = 5000;
  /// Stop when the best value improves by less than this over `patience`
  /// consecutive iterations (or a restart brings no such gain).
  double tolerance = 1e-9;
  std::size_t patience = 0;  // 0: 2 * dimension for the simplex, 5 for L-BFGS
  std::size_t restarts = 3;
  /// Simplex edge length in radians.
  double initial_step = 0.2;
  /// L-BFGS: gradient infinity-norm considered stationary.
  double gradient_tolerance = 1e-7;
  std::size_t memory = 10;
};

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  /// Cost-function evaluations (a value+gradient call counts once).
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;
/// Returns the value and writes the gradient.
using GradientObjective = std::function<double(std::span<const double>, std::span<double>)>;

/// Adaptive Nelder-Mead with simplex restarts around the incumbent.
OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const OptimizerOptions& options = {});

/// Limited-memory BFGS with a backtracking Armijo line search.
OptimizeResult lbfgs(const GradientObjective& f, std::vector<double> x0,
                     const OptimizerOptions& options = {});

}  // namespace csvqd
