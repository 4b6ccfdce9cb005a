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

#include "csvqd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "csvqd/errors.hpp"

namespace csvqd {
namespace {

std::vector<double> initial_params(std::size_t n, const SolverConfig& config,
                                   std::size_t state) {
  std::vector<double> x(n, 0.0);
  if (config.init == InitMode::random) {
    std::mt19937_64 rng(config.seed + 0x9e3779b97f4a7c15ULL * (state + 1));
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (double& v : x) v = u(rng);
  }
  return x;
}

// Cost of one deflation level: <psi|H|psi> + offset + sum_j beta_j |<phi_j|psi>|^2.
class DeflatedCost {
 public:
  DeflatedCost(const ProjectedHamiltonian& h, const Circuit& circuit,
               const Statevector& input, const std::vector<Statevector>& previous,
               double beta)
      : op_(h.reduced), offset_(h.offset), circuit_(circuit), input_(input),
        previous_(previous), beta_(beta) {}

  double value(std::span<const double> x) const {
    Statevector psi = apply(circuit_, x, input_);
    return op_.expectation(psi) + offset_ + penalty(psi);
  }

  double value_and_gradient(std::span<const double> x, std::span<double> grad) const {
    Statevector psi = apply(circuit_, x, input_);
    Statevector lam;
    op_.apply(psi, lam);
    double e = offset_;
    e += inner_product(psi, lam).real();
    for (const auto& phi : previous_) {
      const Complex ov = inner_product(phi, psi);
      e += beta_ * std::norm(ov);
      auto l = lam.amplitudes();
      auto p = phi.amplitudes();
      for (std::size_t i = 0; i < l.size(); ++i) l[i] += beta_ * ov * p[i];
    }
    const auto g = adjoint_gradient(circuit_, x, psi, lam);
    std::copy(g.begin(), g.end(), grad.begin());
    return e;
  }

 private:
  double penalty(const Statevector& psi) const {
    double total = 0.0;
    for (const auto& phi : previous_) total += beta_ * overlap_sq(phi, psi);
    return total;
  }

  CompiledOperator op_;
  double offset_;
  const Circuit& circuit_;
  const Statevector& input_;
  const std::vector<Statevector>& previous_;
  double beta_;
};

OptimizeResult minimise(const DeflatedCost& cost, std::vector<double> x0,
                        const SolverConfig& config) {
  if (config.optimizer == OptimizerKind::lbfgs) {
    return lbfgs([&](std::span<const double> x, std::span<double> g) {
      return cost.value_and_gradient(x, g);
    }, std::move(x0), config.options);
  }
  return nelder_mead([&](std::span<const double> x) { return cost.value(x); },
                     std::move(x0), config.options);
}

void check_widths(const ProjectedHamiltonian& h, const Circuit& circuit,
                  const Statevector& input) {
  if (circuit.n_qubits() != h.n_qubits() || input.n_qubits() != h.n_qubits()) {
    throw DimensionError("circuit has " + std::to_string(circuit.n_qubits()) +
                         " qubits but the reduced Hamiltonian has " +
                         std::to_string(h.n_qubits()));
  }
  circuit.validate();
}

}  // namespace

double default_beta(const ProjectedHamiltonian& h) {
  // 2 * l1 bounds the spectral width but can equal a gap (h = Z); the extra
  // hartree keeps the deflated minimum strict.
  return 2.0 * h.reduced.l1_norm(false) + 1.0;
}

VQEResult vqe(const ProjectedHamiltonian& h, const Circuit& circuit,
              const Statevector& input, std::vector<double> init,
              const SolverConfig& config) {
  check_widths(h, circuit, input);
  if (init.empty()) init = initial_params(circuit.n_parameters(), config, 0);
  if (init.size() != circuit.n_parameters()) {
    throw DimensionError("initial parameters do not match the circuit");
  }
  VQEResult out;
  if (h.reduced.empty()) {
    out.energy = h.offset;
    out.params = std::move(init);
    out.evaluations = 1;
    out.converged = true;
    return out;
  }
  const std::vector<Statevector> none;
  DeflatedCost cost(h, circuit, input, none, 0.0);
  const auto r = minimise(cost, std::move(init), config);
  out.params = r.x;
  out.energy = expectation(h.reduced, apply(circuit, r.x, input)) + h.offset;
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  return out;
}

VQDResult vqd(const ProjectedHamiltonian& h, const Circuit& circuit,
              const Statevector& input, std::size_t n_states,
              const SolverConfig& config,
              const std::vector<std::vector<double>>* warm) {
  if (n_states < 1) throw RangeError("vqd needs at least one state");
  check_widths(h, circuit, input);
  const double beta = config.beta.value_or(default_beta(h));
  const CompiledOperator op(h.reduced);
  VQDResult out;
  for (std::size_t k = 0; k < n_states; ++k) {
    std::vector<double> x0;
    if (warm && k < warm->size() && (*warm)[k].size() == circuit.n_parameters()) {
      x0 = (*warm)[k];
    } else {
      x0 = initial_params(circuit.n_parameters(), config, k);
    }
    DeflatedCost cost(h, circuit, input, out.states, beta);
    OptimizeResult r;
    if (h.reduced.empty() && k == 0) {
      r.x = x0, r.evaluations = 1, r.converged = true;
    } else {
      r = minimise(cost, std::move(x0), config);
    }
    Statevector psi = apply(circuit, r.x, input);
    out.energies.push_back(op.expectation(psi) + h.offset);
    out.parameter_sets.push_back(r.x);
    out.iteration_counts.push_back(r.evaluations);
    out.beta_used.push_back(k == 0 ? 0.0 : beta);
    bool ok = r.converged;
    for (const auto& phi : out.states) {
      if (overlap_sq(phi, psi) > config.overlap_threshold) ok = false;
    }
    out.converged.push_back(ok);
    out.states.push_back(std::move(psi));
  }
  const std::size_t n = out.states.size();
  out.overlap_residuals.assign(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) out.overlap_residuals[i][j] = overlap_sq(out.states[i], out.states[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(out.energies[i] - out.energies[j]) < 1e-5 &&
          out.overlap_residuals[i][j] > 1e-2) {
        out.near_degenerate.emplace_back(i, j);
      }
    }
  }
  return out;
}

AnsatzKind parse_ansatz_kind(const std::string& name) {
  if (name == "uccsd") return AnsatzKind::uccsd;
  if (name == "ryrz") return AnsatzKind::ryrz;
  if (name == "nblock") return AnsatzKind::nblock;
  throw ValidationError("unknown ansatz '" + name + "' (uccsd, ryrz, nblock)");
}

std::string to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::uccsd: return "uccsd";
    case AnsatzKind::ryrz: return "ryrz";
    case AnsatzKind::nblock: return "nblock";
  }
  return "unknown";
}

Ansatz make_ansatz(const MoleculeFixture& fixture, const ContextualSubspace& cs,
                   const AnsatzConfig& config) {
  if (config.kind == AnsatzKind::uccsd) return build_uccsd(fixture, &cs);
  const std::size_t k = cs.projected.n_qubits();
  Ansatz a;
  a.kind = to_string(config.kind);
  a.initial_state = Statevector(k);
  a.circuit = config.kind == AnsatzKind::ryrz
                  ? build_ryrz(k, config.repeats, cs.reference.bitstring, config.layout)
                  : build_nblock(k, config.repeats, cs.reference.bitstring);
  return a;
}

std::vector<double> energy_errors(const std::vector<double>& energies,
                                  const std::vector<double>& references) {
  std::vector<double> out;
  for (std::size_t i = 0; i < energies.size() && i < references.size(); ++i) {
    out.push_back(std::abs(energies[i] - references[i]));
  }
  return out;
}

std::vector<SweepRow> qubit_sweep(const MoleculeFixture& fixture,
                                  const std::vector<std::size_t>& qubit_counts,
                                  const RunConfig& config) {
  const auto prepared =
      prepare_contextual_subspace(fixture.hamiltonian, fixture.hf_index(), config.subspace);
  std::vector<SweepRow> rows;
  for (auto n : qubit_counts) {
    SweepRow row;
    row.n_qubits = n;
    try {
      const auto cs = reduce_to(prepared, fixture.hamiltonian, fixture.hf_index(), n,
                                config.subspace.explicit_order);
      const Ansatz a = make_ansatz(fixture, cs, config.ansatz);
      row.result = vqd(cs.projected, a.circuit, a.initial_state, config.n_states,
                       config.solver);
      row.errors = energy_errors(row.result.energies, fixture.reference_energies);
    } catch (const std::exception& e) {
      row.failure = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

IterationStats iteration_stats(const std::vector<double>& values) {
  IterationStats s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  for (double v : values) s.stddev += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(s.stddev / static_cast<double>(values.size()));
  return s;
}

PesScan pes_scan(const std::vector<MoleculeFixture>& fixtures, std::size_t n_target,
                 const RunConfig& config, bool warm_start) {
  PesScan scan;
  std::vector<std::vector<double>> previous;
  std::optional<std::size_t> width;
  for (const auto& f : fixtures) {
    if (width && *width != f.n_qubits) {
      throw ValidationError("PES fixtures must share a qubit count");
    }
    width = f.n_qubits;
    PesPoint pt;
    pt.name = f.name;
    pt.bond_length = f.bond_length();
    pt.n_qubits = n_target;
    try {
      const auto cs = build_contextual_subspace(f.hamiltonian, f.hf_index(), n_target,
                                                config.subspace);
      const Ansatz a = make_ansatz(f, cs, config.ansatz);
      pt.result = vqd(cs.projected, a.circuit, a.initial_state, config.n_states,
                      config.solver, warm_start && !previous.empty() ? &previous : nullptr);
      pt.errors = energy_errors(pt.result.energies, f.reference_energies);
      previous = pt.result.parameter_sets;
      for (auto c : pt.result.iteration_counts) scan.total_evaluations += c;
    } catch (const std::exception& e) {
      pt.failure = e.what();
    }
    scan.points.push_back(std::move(pt));
  }
  for (std::size_t k = 0; k < config.n_states; ++k) {
    std::vector<double> counts;
    for (const auto& p : scan.points) {
      if (!p.failure && k < p.result.iteration_counts.size()) {
        counts.push_back(static_cast<double>(p.result.iteration_counts[k]));
      }
    }
    scan.iterations.push_back(iteration_stats(counts));
  }
  return scan;
}

}  // namespace csvqd
