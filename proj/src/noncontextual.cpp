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

#include "csvqd/noncontextual.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <optional>
#include <random>

#include "csvqd/errors.hpp"
#include "csvqd/symplectic.hpp"

namespace csvqd {
namespace {

// Aggregated objective: sum over symmetry masks plus one norm per clique.
struct Objective {
  std::size_t n_generators = 0;
  std::vector<std::pair<std::uint64_t, double>> symmetry;  // mask, signed coeff
  // per clique: (mask, signed coeff)
  std::vector<std::vector<std::pair<std::uint64_t, double>>> cliques;

  double value(std::uint64_t nu_bits, std::vector<double>* a_out = nullptr) const {
    double e = 0.0;
    for (const auto& [mask, c] : symmetry) {
      e += (std::popcount(mask & nu_bits) & 1) ? -c : c;
    }
    double norm2 = 0.0;
    if (a_out) a_out->assign(cliques.size(), 0.0);
    for (std::size_t i = 0; i < cliques.size(); ++i) {
      double a = 0.0;
      for (const auto& [mask, c] : cliques[i]) {
        a += (std::popcount(mask & nu_bits) & 1) ? -c : c;
      }
      if (a_out) (*a_out)[i] = a;
      norm2 += a * a;
    }
    return e - std::sqrt(norm2);
  }
};

struct Constraint {
  std::uint64_t mask;
  int parity;  // required popcount(mask & nu) parity
};

class GeneratorModel {
 public:
  explicit GeneratorModel(const NoncontextualPartition& p)
      : p_(p), basis_(p.n_qubits) {
    for (const auto& g : p.generators) {
      if (!basis_.insert(g)) {
        throw RankError("noncontextual generators are not independent");
      }
    }
  }

  Decomposition decompose(const PauliString& op) const {
    if (op.is_identity()) return {0, op.phase() == 2 ? -1 : 1};
    auto d = decompose_product(op, p_.generators, basis_);
    if (!d) {
      throw ContractError("term " + op.to_string() +
                          " is outside the noncontextual generator group");
    }
    return *d;
  }

  std::optional<Decomposition> try_decompose(const PauliString& op) const {
    if (op.is_identity()) return Decomposition{0, op.phase() == 2 ? -1 : 1};
    return decompose_product(op, p_.generators, basis_);
  }

  Objective objective() const {
    Objective obj;
    obj.n_generators = p_.generators.size();
    std::map<std::uint64_t, double> sym;
    for (const auto& t : p_.symmetry_terms) {
      const auto d = decompose(t.pauli);
      sym[d.mask] += d.sign * t.coeff;
    }
    obj.symmetry.assign(sym.begin(), sym.end());
    for (std::size_t i = 0; i < p_.cliques.size(); ++i) {
      std::map<std::uint64_t, double> acc;
      for (const auto& t : p_.cliques[i]) {
        const auto d = decompose(multiply(t.pauli, p_.representatives[i]));
        acc[d.mask] += d.sign * t.coeff;
      }
      obj.cliques.emplace_back(acc.begin(), acc.end());
    }
    return obj;
  }

 private:
  const NoncontextualPartition& p_;
  SymplecticBasis basis_;
};

std::uint64_t nu_to_bits(const std::vector<int>& nu) {
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < nu.size(); ++k) {
    if (nu[k] < 0) bits |= std::uint64_t{1} << k;
  }
  return bits;
}

std::vector<int> bits_to_nu(std::uint64_t bits, std::size_t n) {
  std::vector<int> nu(n);
  for (std::size_t k = 0; k < n; ++k) nu[k] = ((bits >> k) & 1u) ? -1 : 1;
  return nu;
}

// Lexicographic on nu with -1 < +1: the first differing generator decides.
bool lex_smaller(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  return (a >> std::countr_zero(diff)) & 1u;
}

bool feasible(std::uint64_t nu, const std::vector<Constraint>& cs) {
  for (const auto& c : cs) {
    if ((std::popcount(c.mask & nu) & 1) != c.parity) return false;
  }
  return true;
}

bool better(double e, std::uint64_t nu, double best_e, std::uint64_t best_nu) {
  const double tol = 1e-12 * std::max(1.0, std::abs(best_e));
  if (e < best_e - tol) return true;
  if (e > best_e + tol) return false;
  return lex_smaller(nu, best_nu);
}

// Solutions of the parity constraints form nu0 + span(basis) over GF(2).
struct AffineSpace {
  std::uint64_t nu0 = 0;
  std::vector<std::uint64_t> basis;
};

std::optional<AffineSpace> solve_parities(const std::vector<Constraint>& cs,
                                          std::size_t n) {
  struct Row {
    std::uint64_t mask;
    unsigned parity;
    int pivot;
  };
  std::vector<Row> rows;
  for (const auto& c : cs) {
    std::uint64_t m = c.mask;
    unsigned par = static_cast<unsigned>(c.parity);
    for (const auto& r : rows) {
      if ((m >> r.pivot) & 1u) m ^= r.mask, par ^= r.parity;
    }
    if (m == 0) {
      if (par) return std::nullopt;
      continue;
    }
    const int pivot = std::countr_zero(m);
    for (auto& r : rows) {
      if ((r.mask >> pivot) & 1u) r.mask ^= m, r.parity ^= par;
    }
    rows.push_back({m, par, pivot});
  }
  AffineSpace a;
  std::uint64_t pivots = 0;
  for (const auto& r : rows) {
    pivots |= 1ULL << r.pivot;
    if (r.parity) a.nu0 |= 1ULL << r.pivot;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if ((pivots >> f) & 1u) continue;
    std::uint64_t v = 1ULL << f;
    for (const auto& r : rows) {
      if ((r.mask >> f) & 1u) v |= 1ULL << r.pivot;
    }
    a.basis.push_back(v);
  }
  return a;
}

// Simulated annealing restricted to the feasible affine space, so every
// visited assignment satisfies the sector constraints.
std::pair<double, std::uint64_t> anneal(const Objective& obj,
                                        const std::vector<Constraint>& cs,
                                        const NoncontextualOptions& opt,
                                        double scale) {
  const auto space = solve_parities(cs, obj.n_generators);
  if (!space) {
    throw SolverError("sector constraints on the noncontextual generators are contradictory",
                      std::numeric_limits<double>::infinity());
  }
  const auto& basis = space->basis;
  const std::size_t dim = basis.size();
  if (dim == 0) return {obj.value(space->nu0), space->nu0};

  double best_e = std::numeric_limits<double>::infinity();
  std::uint64_t best_nu = 0;
  for (std::size_t restart = 0; restart < opt.annealing_restarts; ++restart) {
    std::mt19937_64 rng(opt.seed + 1000003 * restart);
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t nu = space->nu0;
    for (auto v : basis) {
      if (rng() & 1u) nu ^= v;
    }
    double e = obj.value(nu);
    const double t0 = std::max(scale, 1e-6), t1 = 1e-8;
    for (std::size_t sweep = 0; sweep < opt.annealing_sweeps; ++sweep) {
      const double t =
          t0 * std::pow(t1 / t0, static_cast<double>(sweep) / opt.annealing_sweeps);
      for (std::size_t step = 0; step < dim; ++step) {
        const std::uint64_t cand = nu ^ basis[pick(rng)];
        const double ce = obj.value(cand);
        if (ce <= e || unit(rng) < std::exp((e - ce) / t)) {
          nu = cand;
          e = ce;
        }
      }
    }
    // Greedy single-move polish.
    for (bool improved = true; improved;) {
      improved = false;
      for (auto v : basis) {
        const double ce = obj.value(nu ^ v);
        if (ce < e - 1e-14) {
          nu ^= v;
          e = ce;
          improved = true;
        }
      }
    }
    if (restart == 0 || better(e, nu, best_e, best_nu)) {
      best_e = e;
      best_nu = nu;
    }
  }
  return {best_e, best_nu};
}

}  // namespace

bool is_noncontextual(std::span<const PauliString> terms) {
  std::vector<PauliString> unique;
  for (const auto& t : terms) {
    const auto p = t.without_phase();
    if (!unique.empty() && unique.front().n_qubits() != p.n_qubits()) {
      throw DimensionError("noncontextuality test on mixed widths");
    }
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) {
      unique.push_back(p);
    }
  }
  std::vector<PauliString> rest;
  for (const auto& a : unique) {
    bool universal = true;
    for (const auto& b : unique) {
      if (!commutes(a, b)) {
        universal = false;
        break;
      }
    }
    if (!universal) rest.push_back(a);
  }
  // Commutation must coincide with "same class" on the remainder.
  std::vector<std::size_t> cls(rest.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    std::size_t c = 0;
    while (c < reps.size() && !commutes(rest[reps[c]], rest[i])) ++c;
    if (c == reps.size()) reps.push_back(i);
    cls[i] = c;
  }
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      if (commutes(rest[i], rest[j]) != (cls[i] == cls[j])) return false;
    }
  }
  return true;
}

bool NoncontextualSetBuilder::try_add(const WeightedPauli& term) {
  const PauliString& p = term.pauli;
  if (p.n_qubits() != n_qubits_) {
    throw DimensionError("term width does not match the noncontextual set");
  }
  std::vector<std::size_t> moved;
  for (std::size_t i = 0; i < universal_.size(); ++i) {
    if (!commutes(universal_[i].pauli, p)) moved.push_back(i);
  }
  std::vector<std::size_t> commuting_cliques;
  for (std::size_t j = 0; j < cliques_.size(); ++j) {
    std::size_t n_comm = 0;
    for (const auto& c : cliques_[j]) n_comm += commutes(c.pauli, p);
    if (n_comm != 0 && n_comm != cliques_[j].size()) return false;
    if (n_comm == cliques_[j].size()) commuting_cliques.push_back(j);
  }
  if (!moved.empty()) {
    // Moved terms commute with every existing clique member, which is only
    // transitive when there are no cliques yet.
    if (!cliques_.empty()) return false;
    std::vector<WeightedPauli> w;
    for (auto it = moved.rbegin(); it != moved.rend(); ++it) {
      w.push_back(universal_[*it]);
      universal_.erase(universal_.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    std::reverse(w.begin(), w.end());
    cliques_.push_back(std::move(w));
    cliques_.push_back({term});
    return true;
  }
  if (commuting_cliques.size() == cliques_.size()) {
    universal_.push_back(term);
    return true;
  }
  if (commuting_cliques.size() == 1) {
    cliques_[commuting_cliques.front()].push_back(term);
    return true;
  }
  if (commuting_cliques.empty()) {
    cliques_.push_back({term});
    return true;
  }
  return false;
}

NoncontextualPartition partition(const PauliSum& h, PartitionStrategy strategy) {
  if (!h.is_hermitian()) {
    throw ContractError("partition requires a Hermitian Pauli sum");
  }
  const std::size_t n = h.n_qubits();
  NoncontextualPartition out;
  out.n_qubits = n;
  out.noncontextual = PauliSum(n);
  out.contextual = PauliSum(n);

  std::optional<WeightedPauli> identity;
  std::vector<WeightedPauli> diagonal, offdiagonal;
  for (const auto& [p, c] : h) {
    WeightedPauli t{p, c.real()};
    if (p.is_identity()) {
      identity = t;
    } else if (p.is_diagonal()) {
      diagonal.push_back(t);
    } else {
      offdiagonal.push_back(t);
    }
  }
  std::stable_sort(offdiagonal.begin(), offdiagonal.end(),
                   [](const WeightedPauli& a, const WeightedPauli& b) {
                     return std::abs(a.coeff) > std::abs(b.coeff);
                   });

  NoncontextualSetBuilder builder(n);
  for (const auto& t : diagonal) builder.try_add(t);
  for (const auto& t : offdiagonal) {
    const bool keep = strategy == PartitionStrategy::greedy_diagonal_seed &&
                      builder.try_add(t);
    if (!keep) out.contextual.add(t.pauli, t.coeff);
  }

  if (identity) out.symmetry_terms.push_back(*identity);
  for (const auto& t : builder.universal()) out.symmetry_terms.push_back(t);
  out.cliques = builder.cliques();
  for (const auto& t : out.symmetry_terms) out.noncontextual.add(t.pauli, t.coeff);
  for (const auto& clique : out.cliques) {
    auto rep = std::max_element(
        clique.begin(), clique.end(), [](const auto& a, const auto& b) {
          return std::abs(a.coeff) < std::abs(b.coeff);
        });
    out.representatives.push_back(rep->pauli);
    for (const auto& t : clique) out.noncontextual.add(t.pauli, t.coeff);
  }

  SymplecticBasis basis(n);
  auto offer = [&](const PauliString& g) {
    if (!g.is_identity() && basis.insert(g)) out.generators.push_back(g);
  };
  for (const auto& t : out.symmetry_terms) offer(t.pauli);
  for (std::size_t i = 0; i < out.cliques.size(); ++i) {
    for (const auto& t : out.cliques[i]) {
      if (t.pauli != out.representatives[i]) {
        offer(multiply(t.pauli, out.representatives[i]));
      }
    }
  }
  return out;
}

double eta(const NoncontextualPartition& p, const NoncontextualState& state) {
  if (state.nu.size() != p.generators.size() ||
      state.r.size() != p.cliques.size()) {
    throw DimensionError("noncontextual state does not match the partition");
  }
  GeneratorModel model(p);
  const std::uint64_t bits = nu_to_bits(state.nu);
  auto value = [&](const PauliString& op) {
    const auto d = model.decompose(op);
    return (std::popcount(d.mask & bits) & 1) ? -d.sign : d.sign;
  };
  double e = 0.0;
  for (const auto& t : p.symmetry_terms) e += t.coeff * value(t.pauli);
  for (std::size_t i = 0; i < p.cliques.size(); ++i) {
    for (const auto& t : p.cliques[i]) {
      e += t.coeff * value(multiply(t.pauli, p.representatives[i])) * state.r[i];
    }
  }
  return e;
}

std::optional<int> generator_value(const NoncontextualPartition& p,
                                   const std::vector<int>& nu,
                                   const PauliString& op) {
  GeneratorModel model(p);
  const auto d = model.try_decompose(op);
  if (!d) return std::nullopt;
  return (std::popcount(d->mask & nu_to_bits(nu)) & 1) ? -d->sign : d->sign;
}

NoncontextualSolution solve_noncontextual(const NoncontextualPartition& p,
                                          const NoncontextualOptions& options) {
  GeneratorModel model(p);
  const Objective obj = model.objective();
  const std::size_t n_gen = p.generators.size();

  std::vector<Constraint> constraints;
  for (const auto& c : options.constraints) {
    const auto d = model.try_decompose(c.op);
    if (!d) continue;
    // value = d.sign * (-1)^parity must equal c.sign
    constraints.push_back({d->mask, d->sign == c.sign ? 0 : 1});
  }

  double best_e = std::numeric_limits<double>::infinity();
  std::uint64_t best_nu = 0;
  bool found = false;
  if (n_gen <= options.exhaustive_limit) {
    const std::uint64_t count = std::uint64_t{1} << n_gen;
    for (std::uint64_t nu = 0; nu < count; ++nu) {
      if (!feasible(nu, constraints)) continue;
      const double e = obj.value(nu);
      if (!found || better(e, nu, best_e, best_nu)) {
        best_e = e;
        best_nu = nu;
        found = true;
      }
    }
    if (!found) {
      throw SolverError("sector constraints on the noncontextual generators "
                        "are contradictory",
                        best_e);
    }
  } else {
    const double scale = p.noncontextual.l1_norm();
    std::tie(best_e, best_nu) = anneal(obj, constraints, options, scale);
  }

  NoncontextualSolution sol;
  sol.energy = best_e;
  sol.state.nu = bits_to_nu(best_nu, n_gen);
  std::vector<double> a;
  obj.value(best_nu, &a);
  double norm = 0.0;
  for (double v : a) norm += v * v;
  norm = std::sqrt(norm);
  sol.state.r.assign(a.size(), 0.0);
  if (!a.empty()) {
    if (norm > 0.0) {
      for (std::size_t i = 0; i < a.size(); ++i) sol.state.r[i] = -a[i] / norm;
    } else {
      sol.state.r[0] = 1.0;
    }
  }
  return sol;
}

}  // namespace csvqd
