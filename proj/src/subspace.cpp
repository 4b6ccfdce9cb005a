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

#include "csvqd/subspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <span>

#include "csvqd/errors.hpp"
#include "csvqd/kernels.hpp"
#include "csvqd/symplectic.hpp"

namespace csvqd {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

bool is_clifford_angle(double angle) {
  const double k = angle / kHalfPi;
  return std::abs(k - std::round(k)) < 1e-15;
}

int phase_sign(const PauliString& p) { return p.phase() == 2 ? -1 : 1; }

PauliString letter_at(std::size_t n, std::size_t q, char axis) {
  return PauliString::single(n, q, axis);
}

char other_axis(char a, char b = 0) {
  for (char c : {'X', 'Y', 'Z'}) {
    if (c != a && c != b) return c;
  }
  return 'X';
}

// Clifford sequence under construction, with the current images of every
// target kept in step.
class CliffordBuilder {
 public:
  CliffordBuilder(std::vector<PauliString> images) : images_(std::move(images)) {}

  // One pi/2 step taking images_[k] (which must anticommute with `to`) to
  // +to.
  void step(std::size_t k, const PauliString& to) {
    PauliString g = multiply(to, images_[k]);
    g = g.with_phase(g.phase() + 1);  // i * to * cur, Hermitian
    seq_.push_back({g, kHalfPi});
    for (auto& im : images_) im = clifford_conjugate(im, g, kHalfPi);
  }

  const PauliString& image(std::size_t k) const { return images_[k]; }
  std::vector<RotationStep> take() { return std::move(seq_); }

 private:
  std::vector<PauliString> images_;
  std::vector<RotationStep> seq_;
};

std::uint64_t compress(std::uint64_t v, std::span<const std::size_t> kept) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < kept.size(); ++j) {
    out |= ((v >> kept[j]) & 1ULL) << j;
  }
  return out;
}

std::uint64_t expand(std::uint64_t v, std::span<const std::size_t> kept) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < kept.size(); ++j) {
    out |= ((v >> j) & 1ULL) << kept[j];
  }
  return out;
}

double deleted_weight(const PauliSum& contextual, const PauliString& op) {
  double w = 0.0;
  for (const auto& [p, c] : contextual) {
    if (!commutes(p, op)) w += std::abs(c);
  }
  return w;
}

std::vector<double> unit_r(const NoncontextualPartition& p,
                           const NoncontextualState& state) {
  std::vector<double> r = state.r;
  r.resize(p.clique_count(), 0.0);
  double norm = 0.0;
  for (double v : r) norm += v * v;
  norm = std::sqrt(norm);
  if (norm < 1e-12) {
    std::fill(r.begin(), r.end(), 0.0);
    if (!r.empty()) r[0] = 1.0;
    return r;
  }
  for (double& v : r) v /= norm;
  return r;
}

std::size_t designated_index(std::span<const double> r) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (std::abs(r[i]) > std::abs(r[best]) + 1e-15) best = i;
  }
  return best;
}

}  // namespace

// --- RotationSequence ---------------------------------------------------------

PauliSum RotationSequence::apply(const PauliSum& h) const {
  PauliSum out = h;
  for (const auto& s : steps) out = conjugate_by_rotation(out, s.generator, s.angle);
  return out;
}

RotationSequence RotationSequence::inverse() const {
  RotationSequence inv;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    inv.steps.push_back({it->generator, -it->angle});
  }
  while (inv.clifford_prefix_len < inv.steps.size() &&
         is_clifford_angle(inv.steps[inv.clifford_prefix_len].angle)) {
    ++inv.clifford_prefix_len;
  }
  return inv;
}

void RotationSequence::apply_to_state(Statevector& state) const {
  for (const auto& s : steps) {
    apply_pauli_exponential_in_place(s.generator, s.angle, state);
  }
}

std::vector<std::size_t> ProjectedHamiltonian::kept_qubits() const {
  std::vector<std::size_t> kept;
  for (std::size_t q = 0; q < source_qubits; ++q) {
    const bool fixed = std::any_of(fixed_positions.begin(), fixed_positions.end(),
                                   [q](const FixedQubit& f) { return f.qubit == q; });
    if (!fixed) kept.push_back(q);
  }
  return kept;
}

PauliSum ProjectedHamiltonian::total() const {
  PauliSum out = reduced;
  if (offset != 0.0) out.add(PauliString(n_qubits()), offset);
  return out;
}

// --- symmetries -------------------------------------------------------------

std::vector<PauliString> find_z2_symmetries(const PauliSum& h) {
  if (!h.is_hermitian()) throw ContractError("find_z2_symmetries needs a Hermitian input");
  std::vector<PauliString> terms;
  for (const auto& [p, c] : h) {
    if (!p.is_identity()) terms.push_back(p);
  }
  return commutant_generators(terms, h.n_qubits());
}

int diagonal_value(const PauliString& p, std::uint64_t index) {
  if (!p.is_diagonal() || !p.is_hermitian()) {
    throw ContractError("diagonal_value needs a diagonal Hermitian string");
  }
  const int parity = std::popcount(p.z() & index) & 1;
  return phase_sign(p) * (parity ? -1 : 1);
}

std::vector<SectorConstraint> hf_sector(std::span<const PauliString> symmetries,
                                        std::uint64_t hf_index) {
  std::vector<SectorConstraint> out;
  for (const auto& s : symmetries) {
    if (s.is_diagonal()) out.push_back({s, diagonal_value(s, hf_index)});
  }
  return out;
}

// --- rotations --------------------------------------------------------------

RotationSequence clifford_rotations(std::span<const RotationTarget> targets,
                                    std::vector<std::size_t>* placed) {
  RotationSequence seq;
  if (targets.empty()) return seq;
  const std::size_t n = targets.front().op.n_qubits();
  std::vector<PauliString> ops;
  for (const auto& t : targets) {
    if (t.op.n_qubits() != n) throw DimensionError("rotation targets differ in width");
    if (!t.op.is_hermitian()) throw ContractError("rotation target must be Hermitian");
    if (t.op.is_identity()) throw RankError("identity cannot be a rotation target");
    ops.push_back(t.op);
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (!commutes(ops[i], ops[j])) {
        throw ContractError("rotation targets " + ops[i].to_string() + " and " +
                            ops[j].to_string() + " anticommute");
      }
    }
  }

  CliffordBuilder b(ops);
  std::uint64_t used = 0;
  std::vector<std::size_t> where;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const char axis = targets[k].axis;
    const std::uint64_t support = b.image(k).support() & ~used;
    if (support == 0) {
      throw RankError("rotation target " + targets[k].op.to_string() +
                      " depends on the earlier targets");
    }
    std::size_t q;
    if (targets[k].qubit) {
      q = *targets[k].qubit;
      if (q >= n || ((used >> q) & 1)) {
        throw ContractError("rotation position " + std::to_string(q) +
                            " is out of range or taken");
      }
    } else {
      q = 63 - static_cast<std::size_t>(std::countl_zero(support));
    }
    // Collapse onto a single-qubit Pauli on p, then move it to q.
    const std::size_t p = ((support >> q) & 1) ? q
                          : 63 - static_cast<std::size_t>(std::countl_zero(support));
    const char at_p = b.image(k).at(p);
    const char want_p = (p == q) ? axis : at_p;
    const PauliString single_p = letter_at(n, p, want_p);
    if (b.image(k).without_phase() != single_p) {
      if (commutes(b.image(k), single_p)) {
        b.step(k, letter_at(n, p, other_axis(want_p)));
      }
      b.step(k, single_p);
    }
    if (p != q) {
      const PauliString mid =
          letter_at(n, p, other_axis(want_p)) * letter_at(n, q, other_axis(axis));
      b.step(k, mid.without_phase());
      b.step(k, letter_at(n, q, axis));
    }
    used |= 1ULL << q;
    where.push_back(q);
  }
  seq.steps = b.take();
  seq.clifford_prefix_len = seq.steps.size();
  if (placed) *placed = std::move(where);
  return seq;
}

RotationSequence unitary_partitioning(std::span<const PauliString> reps,
                                      std::span<const double> r,
                                      std::size_t designated) {
  if (reps.size() != r.size() || designated >= reps.size()) {
    throw DimensionError("clique operator and r disagree in length");
  }
  RotationSequence seq;
  const PauliString& cd = reps[designated];
  double a = r[designated];
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (k == designated || std::abs(r[k]) < 1e-12) continue;
    if (commutes(cd, reps[k])) {
      throw ContractError("clique representatives must anticommute pairwise");
    }
    // K = i C_d C_k maps a C_d + b C_k to hypot(a, b) C_d at atan2(b, a).
    PauliString g = multiply(cd, reps[k]);
    g = g.with_phase(g.phase() + 1);
    const double b = r[k];
    seq.steps.push_back({g, std::atan2(b, a)});
    a = std::hypot(a, b);
  }
  return seq;
}

RotationSequence build_rotations(std::span<const RotationTarget> targets,
                                 const std::optional<CliqueOperator>& clique,
                                 std::vector<std::size_t>* placed) {
  if (clique) {
    const auto& cd = clique->reps.at(clique->designated);
    const bool present = std::any_of(targets.begin(), targets.end(),
                                     [&](const RotationTarget& t) {
                                       return t.op.without_phase() == cd.without_phase();
                                     });
    if (!present) throw ContractError("designated clique member is not a rotation target");
  }
  RotationSequence seq = clifford_rotations(targets, placed);
  if (!clique) return seq;

  // Carry the representatives into the Clifford frame, then partition there.
  std::vector<PauliString> reps;
  std::vector<double> r;
  for (std::size_t k = 0; k < clique->reps.size(); ++k) {
    PauliString im = clique->reps[k];
    for (const auto& s : seq.steps) im = clifford_conjugate(im, s.generator, s.angle);
    reps.push_back(im.without_phase());
    r.push_back(clique->r[k] * phase_sign(im));
  }
  const RotationSequence uc = unitary_partitioning(reps, r, clique->designated);
  seq.steps.insert(seq.steps.end(), uc.steps.begin(), uc.steps.end());
  return seq;
}

// --- projection -------------------------------------------------------------

ProjectedHamiltonian project(const PauliSum& h, const RotationSequence& rotations,
                             std::span<const FixedQubit> fixed, double offset) {
  const std::size_t n = h.n_qubits();
  std::uint64_t fixed_mask = 0;
  for (const auto& f : fixed) {
    if (f.qubit >= n) throw DimensionError("fixed qubit out of range");
    if ((fixed_mask >> f.qubit) & 1) throw ContractError("qubit fixed twice");
    if (f.axis != 'X' && f.axis != 'Y' && f.axis != 'Z') {
      throw ContractError(std::string("fixed axis must be X, Y or Z, got ") + f.axis);
    }
    if (f.sign != 1 && f.sign != -1) throw ContractError("sector sign must be +-1");
    fixed_mask |= 1ULL << f.qubit;
  }
  ProjectedHamiltonian out;
  out.source_qubits = n;
  out.fixed_positions.assign(fixed.begin(), fixed.end());
  out.rotations = rotations;
  const auto kept = out.kept_qubits();
  out.reduced = PauliSum(kept.size());
  out.offset = offset;

  const PauliSum rotated = rotations.apply(h);
  for (const auto& [p, c] : rotated) {
    Complex coeff = c;
    bool keep = true;
    for (const auto& f : fixed) {
      const char l = p.at(f.qubit);
      if (l == 'I') continue;
      if (l != f.axis) {
        keep = false;
        break;
      }
      coeff *= static_cast<double>(f.sign);
    }
    if (!keep) continue;
    const PauliString q(kept.size(), compress(p.x(), kept), compress(p.z(), kept),
                        p.phase());
    if (q.is_identity()) {
      out.offset += (coeff * q.phase_factor()).real();
    } else {
      out.reduced.add(q, coeff);
    }
  }
  out.reduced.prune();
  return out;
}

std::vector<PauliSum> project_operator_pool(std::span<const PauliSum> pool,
                                            const RotationSequence& rotations,
                                            std::span<const FixedQubit> fixed) {
  std::vector<PauliSum> out;
  for (const auto& g : pool) {
    ProjectedHamiltonian p = project(g, rotations, fixed, 0.0);
    if (!p.reduced.empty()) out.push_back(std::move(p.reduced));
  }
  return out;
}

ProjectedHamiltonian taper(const PauliSum& h, std::span<const PauliString> symmetries,
                           std::span<const int> signs) {
  if (symmetries.size() != signs.size()) {
    throw DimensionError("one sector sign per symmetry required");
  }
  std::vector<RotationTarget> targets;
  for (const auto& s : symmetries) targets.push_back({s, std::nullopt, 'Z'});
  std::vector<std::size_t> placed;
  RotationSequence seq = clifford_rotations(targets, &placed);
  std::vector<FixedQubit> fixed;
  for (std::size_t k = 0; k < symmetries.size(); ++k) {
    PauliString im = symmetries[k];
    for (const auto& st : seq.steps) im = clifford_conjugate(im, st.generator, st.angle);
    fixed.push_back({placed[k], 'Z', signs[k] * phase_sign(im)});
  }
  return project(h, seq, fixed, 0.0);
}

// --- stabilizer choice ------------------------------------------------------

namespace {

std::vector<StabilizerCandidate> collect_candidates(
    const NoncontextualPartition& p, const NoncontextualState& state,
    const StabilizerOptions& options) {
  std::vector<StabilizerCandidate> out;
  for (std::size_t i = 0; i < options.symmetries.size(); ++i) {
    const auto& s = options.symmetries[i];
    out.push_back({StabilizerSource::symmetry, i, s.op, s.sign,
                   deleted_weight(p.contextual, s.op)});
  }
  for (std::size_t k = 0; k < p.generators.size(); ++k) {
    const int nu = k < state.nu.size() ? state.nu[k] : 1;
    out.push_back({StabilizerSource::generator, k, p.generators[k], nu,
                   deleted_weight(p.contextual, p.generators[k])});
  }
  if (p.clique_count() >= 2) {
    const auto r = unit_r(p, state);
    const std::size_t d = designated_index(r);
    const auto uc = unitary_partitioning(p.representatives, r, d);
    out.push_back({StabilizerSource::clique, d, p.representatives[d], 1,
                   deleted_weight(uc.apply(p.contextual), p.representatives[d])});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.deleted_weight < b.deleted_weight - 1e-12;
  });
  return out;
}

}  // namespace

std::size_t max_stabilizers(const NoncontextualPartition& partition,
                            const StabilizerOptions& options) {
  SymplecticBasis basis(partition.n_qubits);
  for (const auto& s : options.symmetries) basis.insert(s.op);
  for (const auto& g : partition.generators) basis.insert(g);
  if (partition.clique_count() >= 2) basis.insert(partition.representatives.front());
  return basis.rank();
}

StabilizerSelection choose_stabilizers(const PauliSum& h,
                                       const NoncontextualPartition& partition,
                                       const NoncontextualState& state,
                                       std::size_t n_target,
                                       const StabilizerOptions& options) {
  const std::size_t n = h.n_qubits();
  if (partition.n_qubits != n) throw DimensionError("partition built for another width");
  if (n_target > n) {
    throw RangeError("target of " + std::to_string(n_target) + " qubits exceeds the " +
                     std::to_string(n) + " available");
  }
  StabilizerSelection sel;
  sel.candidates = collect_candidates(partition, state, options);
  const std::size_t need = n - n_target;

  std::vector<std::size_t> order;
  if (options.explicit_order) {
    for (auto i : *options.explicit_order) {
      if (i >= sel.candidates.size()) {
        throw RangeError("stabilizer index " + std::to_string(i) + " out of range (" +
                         std::to_string(sel.candidates.size()) + " candidates)");
      }
      order.push_back(i);
    }
  } else {
    for (std::size_t i = 0; i < sel.candidates.size(); ++i) order.push_back(i);
  }

  SymplecticBasis basis(n);
  for (auto i : order) {
    if (sel.chosen.size() == need) break;
    if (basis.insert(sel.candidates[i].op)) sel.chosen.push_back(sel.candidates[i]);
  }
  if (sel.chosen.size() < need) {
    throw RangeError("cannot reach " + std::to_string(n_target) + " qubits: only " +
                     std::to_string(sel.chosen.size()) +
                     " independent stabilizers available, " + std::to_string(need) +
                     " needed");
  }

  std::vector<RotationTarget> targets;
  std::optional<CliqueOperator> clique;
  std::vector<double> r;
  for (const auto& c : sel.chosen) {
    targets.push_back({c.op, std::nullopt, 'Z'});
    if (c.source == StabilizerSource::clique) {
      r = unit_r(partition, state);
      clique = CliqueOperator{partition.representatives, r, c.index};
    }
  }
  std::vector<std::size_t> placed;
  sel.rotations = build_rotations(targets, clique, &placed);

  for (std::size_t k = 0; k < sel.chosen.size(); ++k) {
    const auto& c = sel.chosen[k];
    PauliSum op(n);
    if (c.source == StabilizerSource::clique) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] != 0.0) op.add(partition.representatives[i], r[i]);
      }
    } else {
      op.add(c.op);
    }
    const PauliSum image = sel.rotations.apply(op);
    const PauliString zq = PauliString::single(n, placed[k], 'Z');
    const Complex kappa = image.coefficient(zq);
    if (image.size() != 1 || std::abs(std::abs(kappa) - 1.0) > 1e-8 ||
        std::abs(kappa.imag()) > 1e-8) {
      throw ContractError("internal: stabilizer " + c.op.to_string() +
                          " did not rotate onto a single-qubit Z");
    }
    sel.fixed.push_back({placed[k], 'Z', c.sign * (kappa.real() > 0 ? 1 : -1)});
  }
  return sel;
}

// --- states -------------------------------------------------------------------

Statevector project_state(const Statevector& full, const ProjectedHamiltonian& h) {
  if (full.n_qubits() != h.source_qubits) {
    throw DimensionError("state and projection disagree on the source width");
  }
  std::uint64_t fixed_bits = 0;
  for (const auto& f : h.fixed_positions) {
    if (f.axis != 'Z') throw ContractError("state projection supports Z-axis fixes only");
    if (f.sign < 0) fixed_bits |= 1ULL << f.qubit;
  }
  Statevector rotated = full;
  h.rotations.apply_to_state(rotated);
  const auto kept = h.kept_qubits();
  Statevector out(kept.size());
  for (std::uint64_t j = 0; j < out.dimension(); ++j) {
    out[j] = rotated[expand(j, kept) | fixed_bits];
  }
  return out;
}

SubspaceReference reference_state(std::uint64_t hf_index,
                                  const ProjectedHamiltonian& h) {
  SubspaceReference ref;
  const Statevector hf = Statevector::basis(h.source_qubits, hf_index);
  ref.state = project_state(hf, h);
  ref.projected_norm = ref.state.norm();
  const auto kept = h.kept_qubits();
  auto argmax = [](std::span<const Complex> a) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (std::abs(a[i]) > std::abs(a[best]) + 1e-14) best = i;
    }
    return best;
  };
  if (ref.projected_norm > 1e-6) {
    ref.state.normalize();
    ref.bitstring = argmax(ref.state.amplitudes());
    return ref;
  }
  Statevector rotated = hf;
  h.rotations.apply_to_state(rotated);
  ref.bitstring = compress(argmax(rotated.amplitudes()), kept);
  ref.state = Statevector::basis(kept.size(), ref.bitstring);
  ref.fell_back = true;
  return ref;
}

// --- pipeline -----------------------------------------------------------------

ContextualSubspace prepare_contextual_subspace(const PauliSum& h,
                                               std::uint64_t hf_index,
                                               const SubspaceOptions& options) {
  ContextualSubspace cs;
  cs.symmetries = find_z2_symmetries(h);
  cs.sector = hf_sector(cs.symmetries, hf_index);
  cs.partition = partition(h, options.strategy);
  NoncontextualOptions nc = options.noncontextual;
  nc.constraints.insert(nc.constraints.end(), cs.sector.begin(), cs.sector.end());
  cs.noncontextual = solve_noncontextual(cs.partition, nc);
  return cs;
}

ContextualSubspace reduce_to(const ContextualSubspace& prepared, const PauliSum& h,
                             std::uint64_t hf_index, std::size_t n_target,
                             const std::optional<std::vector<std::size_t>>& explicit_order) {
  ContextualSubspace cs = prepared;
  StabilizerOptions so;
  so.symmetries = cs.sector;
  so.explicit_order = explicit_order;
  cs.selection = choose_stabilizers(h, cs.partition, cs.noncontextual.state, n_target, so);
  cs.projected = project(h, cs.selection.rotations, cs.selection.fixed, 0.0);
  cs.reference = reference_state(hf_index, cs.projected);
  return cs;
}

ContextualSubspace build_contextual_subspace(const PauliSum& h, std::uint64_t hf_index,
                                             std::size_t n_target,
                                             const SubspaceOptions& options) {
  return reduce_to(prepare_contextual_subspace(h, hf_index, options), h, hf_index,
                   n_target, options.explicit_order);
}

std::string to_string(StabilizerSource source) {
  switch (source) {
    case StabilizerSource::symmetry: return "symmetry";
    case StabilizerSource::generator: return "generator";
    case StabilizerSource::clique: return "clique";
  }
  return "unknown";
}

}  // namespace csvqd
