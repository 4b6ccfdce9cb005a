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

#include "csvqd/hamiltonian_io.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "csvqd/errors.hpp"

namespace csvqd {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::uint64_t MoleculeFixture::hf_index() const {
  std::uint64_t idx = 0;
  for (std::size_t q = 0; q < hf_occupation.size(); ++q) {
    if (hf_occupation[q] == '1') idx |= 1ULL << q;
  }
  return idx;
}

std::optional<double> MoleculeFixture::bond_length() const {
  try {
    std::size_t used = 0;
    const double v = std::stod(geometry, &used);
    if (used == geometry.size()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

bool MoleculeFixture::interleaved_spin_orbitals() const {
  const auto it = metadata.find("spin_orbital_order");
  if (it == metadata.end() || !it->is_string()) return true;
  return it->get<std::string>().find("blocked") == std::string::npos;
}

void validate(const MoleculeFixture& f) {
  if (f.n_qubits == 0 || f.n_qubits > kMaxQubits) {
    throw ValidationError("n_qubits must be in 1.." + std::to_string(kMaxQubits));
  }
  if (f.hamiltonian.n_qubits() != f.n_qubits) {
    throw ValidationError("hamiltonian width differs from n_qubits");
  }
  if (!f.hamiltonian.is_hermitian(1e-12)) {
    throw ValidationError("hamiltonian is not Hermitian (complex coefficient)");
  }
  if (f.hf_occupation.size() != f.n_qubits) {
    throw ValidationError("hf_occupation length " + std::to_string(f.hf_occupation.size()) +
                          " differs from n_qubits " + std::to_string(f.n_qubits));
  }
  std::size_t ones = 0;
  for (char c : f.hf_occupation) {
    if (c != '0' && c != '1') throw ValidationError("hf_occupation must be a bitstring");
    ones += c == '1';
  }
  if (ones != f.n_electrons) {
    throw ValidationError("hf_occupation has " + std::to_string(ones) +
                          " set bits but n_electrons is " + std::to_string(f.n_electrons));
  }
  for (std::size_t i = 1; i < f.reference_energies.size(); ++i) {
    if (f.reference_energies[i] < f.reference_energies[i - 1]) {
      throw ValidationError("reference_energies must be nondecreasing");
    }
  }
}

json pauli_sum_to_json(const PauliSum& sum) {
  json terms = json::array();
  for (const auto& [p, c] : sum) {
    terms.push_back({{"pauli", p.letters()}, {"coeff", {c.real(), c.imag()}}});
  }
  return terms;
}

PauliSum pauli_sum_from_json(const json& terms, std::size_t n_qubits) {
  if (!terms.is_array()) throw ValidationError("'terms' must be an array");
  PauliSum out(n_qubits);
  for (const auto& t : terms) {
    const auto text = required<std::string>(t, "pauli");
    PauliString p;
    try {
      p = PauliString::parse(text);
    } catch (const std::exception& e) {
      throw ValidationError("bad Pauli string '" + text + "': " + e.what());
    }
    if (p.n_qubits() != n_qubits) {
      throw ValidationError("term '" + text + "' has the wrong length");
    }
    const json& c = t.at("coeff");
    Complex coeff;
    if (c.is_number()) {
      coeff = c.get<double>();
    } else if (c.is_array() && c.size() == 2) {
      coeff = {c[0].get<double>(), c[1].get<double>()};
    } else {
      throw ValidationError("coeff of '" + text + "' must be [re, im]");
    }
    out.add(p, coeff);
  }
  return out;
}

MoleculeFixture fixture_from_json(const json& doc) {
  MoleculeFixture f;
  f.name = required<std::string>(doc, "name");
  f.geometry = doc.contains("geometry") && doc["geometry"].is_string()
                   ? doc["geometry"].get<std::string>()
                   : (doc.contains("geometry") ? doc["geometry"].dump() : "");
  f.n_qubits = required<std::size_t>(doc, "n_qubits");
  f.n_electrons = required<std::size_t>(doc, "n_electrons");
  f.hf_occupation = required<std::string>(doc, "hf_occupation");
  if (f.n_qubits == 0 || f.n_qubits > kMaxQubits) {
    throw ValidationError("n_qubits must be in 1.." + std::to_string(kMaxQubits));
  }
  if (!doc.contains("terms")) throw ValidationError("missing field 'terms'");
  f.hamiltonian = pauli_sum_from_json(doc["terms"], f.n_qubits);
  if (doc.contains("reference_energies")) {
    f.reference_energies = required<std::vector<double>>(doc, "reference_energies");
  }
  if (doc.contains("hf_energy") && doc["hf_energy"].is_number()) {
    f.hf_energy = doc["hf_energy"].get<double>();
  }
  if (doc.contains("metadata")) f.metadata = doc["metadata"];
  validate(f);
  return f;
}

json fixture_to_json(const MoleculeFixture& f) {
  json doc = {{"name", f.name},
              {"geometry", f.geometry},
              {"n_qubits", f.n_qubits},
              {"n_electrons", f.n_electrons},
              {"hf_occupation", f.hf_occupation}};
  if (f.hf_energy) doc["hf_energy"] = *f.hf_energy;
  doc["metadata"] = f.metadata;
  doc["terms"] = pauli_sum_to_json(f.hamiltonian);
  doc["reference_energies"] = f.reference_energies;
  return doc;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": parse error: " + e.what());
  }
}

void write_json(const json& doc, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

MoleculeFixture load_fixture(const std::filesystem::path& path) {
  return fixture_from_json(read_json(path));
}

void save_fixture(const MoleculeFixture& f, const std::filesystem::path& path) {
  write_json(fixture_to_json(f), path);
}

json projected_to_json(const ProjectedHamiltonian& h) {
  json fixed = json::array();
  for (const auto& f : h.fixed_positions) {
    fixed.push_back({{"qubit", f.qubit}, {"axis", std::string(1, f.axis)}, {"sign", f.sign}});
  }
  json steps = json::array();
  for (const auto& s : h.rotations.steps) {
    steps.push_back({{"generator", s.generator.to_string()}, {"angle", s.angle}});
  }
  return {{"n_qubits", h.n_qubits()},
          {"source_qubits", h.source_qubits},
          {"offset", h.offset},
          {"fixed_positions", std::move(fixed)},
          {"rotations", {{"steps", std::move(steps)},
                         {"clifford_prefix_len", h.rotations.clifford_prefix_len}}},
          {"terms", pauli_sum_to_json(h.reduced)}};
}

ProjectedHamiltonian projected_from_json(const json& doc) {
  ProjectedHamiltonian h;
  h.source_qubits = required<std::size_t>(doc, "source_qubits");
  h.offset = required<double>(doc, "offset");
  for (const auto& f : doc.at("fixed_positions")) {
    const auto axis = required<std::string>(f, "axis");
    if (axis.size() != 1) throw ValidationError("fixed axis must be one letter");
    h.fixed_positions.push_back(
        {required<std::size_t>(f, "qubit"), axis[0], required<int>(f, "sign")});
  }
  const auto n = required<std::size_t>(doc, "n_qubits");
  if (n != h.n_qubits()) throw ValidationError("n_qubits inconsistent with fixed_positions");
  if (doc.contains("rotations")) {
    const json& r = doc["rotations"];
    for (const auto& s : r.at("steps")) {
      h.rotations.steps.push_back({PauliString::parse(required<std::string>(s, "generator")),
                                   required<double>(s, "angle")});
    }
    h.rotations.clifford_prefix_len = required<std::size_t>(r, "clifford_prefix_len");
  }
  h.reduced = pauli_sum_from_json(doc.at("terms"), n);
  if (!h.reduced.is_hermitian()) throw ValidationError("projected terms are not Hermitian");
  return h;
}

void save_projected(const ProjectedHamiltonian& h, const std::filesystem::path& path) {
  write_json(projected_to_json(h), path);
}

ProjectedHamiltonian load_projected(const std::filesystem::path& path) {
  return projected_from_json(read_json(path));
}

}  // namespace csvqd
