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

// Brute-force reference for the noncontextual energy: every element of the
// generator group is tabulated by Gray-code multiplication, every nu is
// enumerated and r is found on a grid over the unit sphere, then refined by
// a local pattern search.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "csvqd/noncontextual.hpp"

namespace csvqd::testing {

class NoncontextualOracle {
 public:
  explicit NoncontextualOracle(const NoncontextualPartition& p) : p_(p) {
    const std::size_t g = p.generators.size();
    if (g > 20) throw std::runtime_error("oracle limited to 20 generators");
    PauliString cur(p.n_qubits);
    group_[{0, 0}] = {0, 1};
    std::uint64_t mask = 0;
    for (std::uint64_t i = 1; i < (1ULL << g); ++i) {
      const int bit = __builtin_ctzll(i);
      mask ^= 1ULL << bit;
      // Generators commute, so multiplication order does not matter.
      cur = multiply(cur, p.generators[static_cast<std::size_t>(bit)]);
      group_[{cur.x(), cur.z()}] = {mask, cur.phase() == 2 ? -1 : 1};
    }
  }

  // value of a Hermitian string of the group under nu.
  int value(const PauliString& s, const std::vector<int>& nu) const {
    const auto it = group_.find({s.x(), s.z()});
    if (it == group_.end()) throw std::runtime_error("string outside the generator group");
    int v = it->second.second * (s.phase() == 2 ? -1 : 1);
    for (std::size_t k = 0; k < nu.size(); ++k) {
      if ((it->second.first >> k) & 1) v *= nu[k];
    }
    return v;
  }

  // Symmetric part s and clique vector a for this nu: eta = s + a . r.
  std::pair<double, std::vector<double>> linear_form(const std::vector<int>& nu) const {
    double s = 0.0;
    for (const auto& t : p_.symmetry_terms) s += t.coeff * value(t.pauli, nu);
    std::vector<double> a(p_.cliques.size(), 0.0);
    for (std::size_t i = 0; i < p_.cliques.size(); ++i) {
      for (const auto& t : p_.cliques[i]) {
        a[i] += t.coeff * value(multiply(t.pauli, p_.representatives[i]), nu);
      }
    }
    return {s, a};
  }

  static double min_on_sphere(const std::vector<double>& a) {
    const std::size_t m = a.size();
    auto f = [&](const std::vector<double>& angles) {
      // Hyperspherical coordinates.
      double total = 0.0, prod = 1.0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        total += a[i] * prod * std::cos(angles[i]);
        prod *= std::sin(angles[i]);
      }
      return total + a[m - 1] * prod;
    };
    if (m == 0) return 0.0;
    if (m == 1) return -std::abs(a[0]);
    if (m > 3) throw std::runtime_error("r-grid oracle limited to 3 cliques");
    const int steps = m == 2 ? 720 : 180;
    std::vector<double> best(m - 1, 0.0), cur(m - 1, 0.0);
    double fbest = std::numeric_limits<double>::infinity();
    const double span = 2 * std::numbers::pi;
    for (int i = 0; i < steps; ++i) {
      cur[0] = span * i / steps;
      const int inner = m == 3 ? steps : 1;
      for (int j = 0; j < inner; ++j) {
        if (m == 3) cur[1] = span * j / steps;
        const double v = f(cur);
        if (v < fbest) fbest = v, best = cur;
      }
    }
    // Compass search down to 1e-9 rad.
    for (double h = span / steps; h > 1e-9; h *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t d = 0; d < best.size(); ++d) {
          for (double sgn : {1.0, -1.0}) {
            auto trial = best;
            trial[d] += sgn * h;
            const double v = f(trial);
            if (v < fbest - 1e-16) fbest = v, best = trial, improved = true;
          }
        }
      }
    }
    return fbest;
  }

  bool in_group(const PauliString& s) const { return group_.count({s.x(), s.z()}) > 0; }

  // Minimum of eta over every nu and unit r. Constraints (op, sign) whose op
  // lies in the generator group restrict nu; the rest cannot be expressed
  // and are ignored.
  double minimum(const std::vector<std::pair<PauliString, int>>& constraints = {}) const {
    const std::size_t g = p_.generators.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> nu(g, 1);
    for (std::uint64_t code = 0; code < (1ULL << g); ++code) {
      for (std::size_t k = 0; k < g; ++k) nu[k] = ((code >> k) & 1) ? -1 : 1;
      bool feasible = true;
      for (const auto& [op, sign] : constraints) {
        if (in_group(op) && value(op, nu) != sign) feasible = false;
      }
      if (!feasible) continue;
      const auto [s, a] = linear_form(nu);
      double bound = s;  // eta >= s - sum |a_i| on the sphere
      for (double v : a) bound -= std::abs(v);
      if (bound >= best) continue;
      best = std::min(best, s + min_on_sphere(a));
    }
    return best;
  }

 private:
  const NoncontextualPartition& p_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<std::uint64_t, int>> group_;
};

}  // namespace csvqd::testing
