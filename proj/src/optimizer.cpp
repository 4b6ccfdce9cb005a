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

#include "csvqd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace csvqd {
namespace {

// Counts evaluations and remembers the best point seen.
class Counted {
 public:
  Counted(const Objective& f, std::size_t budget) : f_(f), budget_(budget) {}

  double operator()(std::span<const double> x) {
    ++count_;
    const double v = f_(x);
    if (v < best_) {
      best_ = v;
      best_x_.assign(x.begin(), x.end());
    }
    return v;
  }
  bool exhausted() const { return count_ >= budget_; }
  std::size_t count() const { return count_; }
  double best() const { return best_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  const Objective& f_;
  std::size_t budget_;
  std::size_t count_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
};

// One simplex descent from x0; returns true when it met the tolerance.
bool simplex_run(Counted& f, const std::vector<double>& x0, const OptimizerOptions& o) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  // Dimension-adapted coefficients (Gao & Han).
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 0.5 / dn,
               delta = 1.0 - 1.0 / dn;
  const std::size_t patience = o.patience ? o.patience : 2 * n;

  std::vector<std::vector<double>> s(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += o.initial_step;
  for (std::size_t i = 0; i <= n; ++i) {
    if (f.exhausted()) return false;
    fs[i] = f(s[i]);
  }

  std::vector<std::size_t> idx(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  double last_best = std::numeric_limits<double>::infinity();
  std::size_t stale = 0;
  while (!f.exhausted()) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
    const std::size_t ib = idx[0], iw = idx[n], is = idx[n - 1];
    if (last_best - fs[ib] < o.tolerance) {
      if (++stale >= patience && fs[iw] - fs[ib] < o.tolerance) return true;
    } else {
      stale = 0;
    }
    last_best = std::min(last_best, fs[ib]);

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += s[idx[k]][j] / dn;
    }
    for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - s[iw][j]);
    const double fr = f(xr);
    if (fr < fs[ib]) {
      if (f.exhausted()) {
        s[iw] = xr, fs[iw] = fr;
        break;
      }
      for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + beta * (xr[j] - centroid[j]);
      const double fe = f(xe);
      if (fe < fr) {
        s[iw] = xe, fs[iw] = fe;
      } else {
        s[iw] = xr, fs[iw] = fr;
      }
      continue;
    }
    if (fr < fs[is]) {
      s[iw] = xr, fs[iw] = fr;
      continue;
    }
    if (f.exhausted()) break;
    const bool outside = fr < fs[iw];
    for (std::size_t j = 0; j < n; ++j) {
      xc[j] = outside ? centroid[j] + gamma * (xr[j] - centroid[j])
                      : centroid[j] - gamma * (centroid[j] - s[iw][j]);
    }
    const double fc = f(xc);
    if (fc < (outside ? fr : fs[iw])) {
      s[iw] = xc, fs[iw] = fc;
      continue;
    }
    // Shrink towards the best vertex.
    for (std::size_t k = 1; k <= n; ++k) {
      if (f.exhausted()) return false;
      const std::size_t v = idx[k];
      for (std::size_t j = 0; j < n; ++j) s[v][j] = s[ib][j] + delta * (s[v][j] - s[ib][j]);
      fs[v] = f(s[v]);
    }
  }
  return false;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const OptimizerOptions& o) {
  Counted cf(f, std::max<std::size_t>(o.max_evaluations, 1));
  OptimizeResult out;
  if (x0.empty()) {
    out.value = cf(x0);
    out.x = x0;
    out.evaluations = cf.count();
    out.converged = true;
    return out;
  }
  bool converged = simplex_run(cf, x0, o);
  for (std::size_t r = 0; r < o.restarts && converged && !cf.exhausted(); ++r) {
    const double before = cf.best();
    converged = simplex_run(cf, cf.best_x(), o);
    if (converged && before - cf.best() < o.tolerance) break;
  }
  out.x = cf.best_x();
  out.value = cf.best();
  out.evaluations = cf.count();
  out.converged = converged;
  return out;
}

OptimizeResult lbfgs(const GradientObjective& f, std::vector<double> x,
                     const OptimizerOptions& o) {
  const std::size_t n = x.size();
  const std::size_t patience = o.patience ? o.patience : 5;
  OptimizeResult out;
  std::vector<double> g(n), gn(n), xn(n), d(n);
  std::size_t evals = 0;
  double fx = f(x, g);
  ++evals;
  std::deque<std::vector<double>> S, Y;
  std::size_t stale = 0;
  bool converged = n == 0;

  while (!converged && evals < o.max_evaluations) {
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    if (gmax < o.gradient_tolerance) {
      converged = true;
      break;
    }
    // Two-loop recursion.
    d = g;
    std::vector<double> alpha(S.size());
    for (std::size_t k = S.size(); k-- > 0;) {
      alpha[k] = dot(S[k], d) / dot(Y[k], S[k]);
      for (std::size_t j = 0; j < n; ++j) d[j] -= alpha[k] * Y[k][j];
    }
    const double h0 = S.empty() ? 1.0 / std::max(1.0, gmax)
                                : dot(S.back(), Y.back()) / dot(Y.back(), Y.back());
    for (double& v : d) v *= h0;
    for (std::size_t k = 0; k < S.size(); ++k) {
      const double b = dot(Y[k], d) / dot(Y[k], S[k]);
      for (std::size_t j = 0; j < n; ++j) d[j] += S[k][j] * (alpha[k] - b);
    }
    for (double& v : d) v = -v;
    double slope = dot(g, d);
    if (slope >= 0.0) {
      // Not a descent direction: reset to steepest descent.
      S.clear(), Y.clear();
      for (std::size_t j = 0; j < n; ++j) d[j] = -g[j] / std::max(1.0, gmax);
      slope = dot(g, d);
    }
    double step = 1.0, fn = 0.0;
    bool accepted = false;
    while (evals < o.max_evaluations) {
      for (std::size_t j = 0; j < n; ++j) xn[j] = x[j] + step * d[j];
      fn = f(xn, gn);
      ++evals;
      if (fn <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < 1e-12) break;
    }
    if (!accepted) {
      // No progress along any step: treat as stationary to tolerance.
      converged = std::abs(slope) < o.tolerance;
      break;
    }
    std::vector<double> s(n), y(n);
    for (std::size_t j = 0; j < n; ++j) s[j] = xn[j] - x[j], y[j] = gn[j] - g[j];
    if (dot(s, y) > 1e-14) {
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      if (S.size() > o.memory) S.pop_front(), Y.pop_front();
    }
    const double gain = fx - fn;
    x.swap(xn);
    g.swap(gn);
    fx = fn;
    if (gain < o.tolerance) {
      if (++stale >= patience) converged = true;
    } else {
      stale = 0;
    }
  }
  out.x = std::move(x);
  out.value = fx;
  out.evaluations = evals;
  out.converged = converged;
  return out;
}

}  // namespace csvqd
