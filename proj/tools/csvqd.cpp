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

// csvqd: command-line front end for the contextual-subspace VQD toolkit.
//
// Exit codes: 0 success, 2 input validation, 3 solver failure (or
// non-convergence with --strict), 4 resource cap.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csvqd/errors.hpp"
#include "csvqd/hamiltonian_io.hpp"
#include "csvqd/noncontextual.hpp"
#include "csvqd/solver.hpp"
#include "csvqd/subspace.hpp"
#include "json.hpp"

#ifndef CSVQD_VERSION
#define CSVQD_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace csvqd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitResource = 4;

struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a run depends on. Built from --config first, then flags.
struct Options {
  std::vector<std::string> inputs;
  std::string qubits;
  std::size_t states = 2;
  std::string ansatz = "uccsd";
  std::size_t repeats = 1;
  std::string layout = "full";
  std::optional<double> beta;
  std::uint64_t seed = 0;
  bool warm_start = false;
  std::string out;
  std::string svg;
  bool strict = false;
  std::string strategy = "greedy";
  std::string optimizer = "nelder-mead";
  std::string init = "zero";
  std::size_t max_evaluations = 5000;
  double tolerance = 1e-9;
  std::size_t restarts = 3;
  std::string order;
  std::string config;
};

json snapshot(const Options& o) {
  json j = {{"qubits", o.qubits},       {"states", o.states},
            {"ansatz", o.ansatz},       {"repeats", o.repeats},
            {"layout", o.layout},       {"seed", o.seed},
            {"warm_start", o.warm_start}, {"strict", o.strict},
            {"strategy", o.strategy},   {"optimizer", o.optimizer},
            {"init", o.init},           {"max_evaluations", o.max_evaluations},
            {"tolerance", o.tolerance}, {"restarts", o.restarts},
            {"order", o.order}};
  j["beta"] = o.beta ? json(*o.beta) : json(nullptr);
  return j;
}

void apply_config_file(Options& o, const std::string& path) {
  const json j = read_json(path);
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key) && !j[key].is_null()) j[key].get_to(field);
  };
  if (j.contains("qubits") && j["qubits"].is_number_unsigned()) {
    o.qubits = std::to_string(j["qubits"].get<std::size_t>());
  } else {
    get("qubits", o.qubits);
  }
  get("states", o.states);
  get("ansatz", o.ansatz);
  get("repeats", o.repeats);
  get("layout", o.layout);
  get("seed", o.seed);
  get("warm_start", o.warm_start);
  get("strict", o.strict);
  get("strategy", o.strategy);
  get("optimizer", o.optimizer);
  get("init", o.init);
  get("max_evaluations", o.max_evaluations);
  get("tolerance", o.tolerance);
  get("restarts", o.restarts);
  if (j.contains("beta") && j["beta"].is_number()) o.beta = j["beta"].get<double>();
}

PartitionStrategy parse_strategy(const std::string& s) {
  if (s == "greedy") return PartitionStrategy::greedy_diagonal_seed;
  if (s == "diagonal") return PartitionStrategy::diagonal_only;
  throw ValidationError("unknown --strategy '" + s + "' (greedy, diagonal)");
}

RunConfig run_config(const Options& o) {
  RunConfig rc;
  rc.ansatz.kind = parse_ansatz_kind(o.ansatz);
  rc.ansatz.repeats = o.repeats;
  if (o.layout == "full") rc.ansatz.layout = EntanglerLayout::full;
  else if (o.layout == "linear") rc.ansatz.layout = EntanglerLayout::linear;
  else throw ValidationError("unknown --layout '" + o.layout + "' (full, linear)");
  rc.n_states = o.states;
  if (o.states < 1) throw ValidationError("--states must be at least 1");
  if (o.optimizer == "nelder-mead") rc.solver.optimizer = OptimizerKind::nelder_mead;
  else if (o.optimizer == "lbfgs") rc.solver.optimizer = OptimizerKind::lbfgs;
  else throw ValidationError("unknown --optimizer '" + o.optimizer + "' (nelder-mead, lbfgs)");
  if (o.init == "zero") rc.solver.init = InitMode::zero;
  else if (o.init == "random") rc.solver.init = InitMode::random;
  else throw ValidationError("unknown --init '" + o.init + "' (zero, random)");
  rc.solver.beta = o.beta;
  rc.solver.seed = o.seed;
  rc.solver.options.max_evaluations = o.max_evaluations;
  rc.solver.options.tolerance = o.tolerance;
  rc.solver.options.restarts = o.restarts;
  rc.subspace.strategy = parse_strategy(o.strategy);
  if (!o.order.empty()) {
    std::vector<std::size_t> order;
    std::stringstream ss(o.order);
    for (std::string tok; std::getline(ss, tok, ',');) order.push_back(std::stoul(tok));
    rc.subspace.explicit_order = order;
  }
  return rc;
}

// "6", "2,4,6" or "1:8".
std::vector<std::size_t> parse_qubits(const std::string& s) {
  if (s.empty()) throw ValidationError("--qubits is required");
  std::vector<std::size_t> out;
  try {
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
      const auto lo = std::stoul(s.substr(0, colon)), hi = std::stoul(s.substr(colon + 1));
      for (auto q = lo; q <= hi; ++q) out.push_back(q);
    } else {
      std::stringstream ss(s);
      for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stoul(tok));
    }
  } catch (const std::logic_error&) {
    throw ValidationError("cannot parse --qubits '" + s + "'");
  }
  if (out.empty()) throw ValidationError("--qubits selects nothing");
  return out;
}

// Expands '*' and '?' in the file-name part; plain paths pass through.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    const std::string name = p.filename().string();
    if (name.find_first_of("*?") == std::string::npos) {
      out.push_back(p);
      continue;
    }
    std::string re;
    for (char c : name) {
      if (c == '*') re += ".*";
      else if (c == '?') re += '.';
      else if (std::string("\\^$.|+()[]{}").find(c) != std::string::npos) re += std::string("\\") + c;
      else re += c;
    }
    const std::regex pattern(re);
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    std::vector<fs::path> hits;
    if (fs::is_directory(dir)) {
      for (const auto& e : fs::directory_iterator(dir)) {
        if (std::regex_match(e.path().filename().string(), pattern)) hits.push_back(e.path());
      }
    }
    if (hits.empty()) throw ValidationError("no fixture matches '" + in + "'");
    std::sort(hits.begin(), hits.end());
    out.insert(out.end(), hits.begin(), hits.end());
  }
  return out;
}

std::string iso_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

class Run {
 public:
  Run(std::string command, const Options& o, std::vector<std::string> argv)
      : command_(std::move(command)), o_(o), argv_(std::move(argv)), started_(iso_now()) {}

  void add_fixture(const fs::path& p) { fixtures_.push_back(p.string()); }
  json& summary() { return summary_; }

  // Writes `text` to --out (or stdout) and the manifest sidecar next to it.
  void emit(const std::string& text, const std::string& manifest_comment_prefix) {
    if (o_.out.empty()) {
      std::cout << text;
      if (!summary_.is_null()) std::cerr << summary_.dump(2) << "\n";
      return;
    }
    const std::string manifest = o_.out + ".manifest.json";
    {
      std::ofstream f(o_.out);
      if (!f) throw ValidationError("cannot write " + o_.out);
      if (!manifest_comment_prefix.empty()) {
        f << manifest_comment_prefix << " manifest: " << fs::path(manifest).filename().string()
          << "\n";
      }
      f << text;
    }
    json m = {{"command", command_},
              {"argv", argv_},
              {"fixtures", fixtures_},
              {"config", snapshot(o_)},
              {"seed", o_.seed},
              {"version", CSVQD_VERSION},
              {"started", started_},
              {"finished", iso_now()},
              {"output", o_.out}};
    if (!o_.svg.empty()) m["svg"] = o_.svg;
    if (!summary_.is_null()) m["summary"] = summary_;
    write_json(m, manifest);
  }

 private:
  std::string command_;
  const Options& o_;
  std::vector<std::string> argv_;
  std::string started_;
  std::vector<std::string> fixtures_;
  json summary_;
};

// --- SVG ----------------------------------------------------------------------

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

void write_svg(const std::string& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const std::vector<Series>& series) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  }
  if (x0 > x1) return;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double w = 640, h = 420, ml = 80, mr = 140, mt = 40, mb = 60;
  auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); };
  auto sy = [&](double y) { return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ofstream f(path);
  f << std::setprecision(6);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n"
    << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    f << "<text x=\"" << sx(xv) << "\" y=\"" << h - mb + 16 << "\" text-anchor=\"middle\">" << xv
      << "</text>\n"
      << "<text x=\"" << ml - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << yv
      << "</text>\n";
  }
  f << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 20 << "\" text-anchor=\"middle\">"
    << xlabel << "</text>\n"
    << "<text x=\"16\" y=\"" << (mt + h - mb) / 2 << "\" transform=\"rotate(-90 16 "
    << (mt + h - mb) / 2 << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* c = colors[k % 5];
    f << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : series[k].points) f << sx(x) << "," << sy(y) << " ";
    f << "\"/>\n";
    for (auto [x, y] : series[k].points) {
      f << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    }
    f << "<text x=\"" << w - mr + 10 << "\" y=\"" << mt + 16 * (k + 1) << "\" fill=\"" << c
      << "\">" << series[k].label << "</text>\n";
  }
  f << "</svg>\n";
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string error_cell(const std::vector<double>& errors, std::size_t k) {
  return k < errors.size() ? num(errors[k]) : "";
}

bool any_unconverged(const VQDResult& r) {
  return std::any_of(r.converged.begin(), r.converged.end(), [](bool c) { return !c; });
}

// --- commands -------------------------------------------------------------------

int cmd_validate(const Options& o) {
  for (const auto& p : expand_inputs(o.inputs)) {
    const auto f = load_fixture(p);
    std::cout << "ok " << p.string() << ": " << f.name << ", " << f.n_qubits << " qubits, "
              << f.hamiltonian.size() << " terms\n";
  }
  return kExitOk;
}

int cmd_decompose(const Options& o, Run& run) {
  const auto paths = expand_inputs(o.inputs);
  json reports = json::array();
  for (const auto& path : paths) {
    run.add_fixture(path);
    const auto f = load_fixture(path);
    SubspaceOptions so;
    so.strategy = parse_strategy(o.strategy);
    const auto cs = prepare_contextual_subspace(f.hamiltonian, f.hf_index(), so);
    const auto& p = cs.partition;
    json gens = json::array();
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      gens.push_back({{"pauli", p.generators[k].to_string()}, {"nu", cs.noncontextual.state.nu[k]}});
    }
    json reps = json::array();
    for (const auto& r : p.representatives) reps.push_back(r.to_string());
    json syms = json::array();
    for (const auto& s : cs.sector) syms.push_back({{"pauli", s.op.to_string()}, {"sign", s.sign}});
    StabilizerOptions stab;
    stab.symmetries = cs.sector;
    json rep = {{"fixture", path.string()},
                {"name", f.name},
                {"n_qubits", f.n_qubits},
                {"n_terms", f.hamiltonian.size()},
                {"n_noncontextual_terms", p.noncontextual.size()},
                {"n_contextual_terms", p.contextual.size()},
                {"n_cliques", p.clique_count()},
                {"clique_representatives", reps},
                {"generators", gens},
                {"r", cs.noncontextual.state.r},
                {"z2_symmetries", syms},
                {"e_noncontextual_hartree", cs.noncontextual.energy},
                {"min_reduced_qubits", f.n_qubits - max_stabilizers(p, stab)}};
    if (f.hf_energy) rep["hf_energy_hartree"] = *f.hf_energy;
    reports.push_back(rep);
  }
  run.emit((reports.size() == 1 ? reports[0] : reports).dump(2) + "\n", "");
  return kExitOk;
}

int cmd_project(const Options& o, Run& run) {
  const auto paths = expand_inputs(o.inputs);
  if (paths.size() != 1) throw ValidationError("project takes exactly one fixture");
  const auto q = parse_qubits(o.qubits);
  if (q.size() != 1) throw ValidationError("project takes a single --qubits value");
  run.add_fixture(paths[0]);
  const auto f = load_fixture(paths[0]);
  const auto rc = run_config(o);
  const auto cs = build_contextual_subspace(f.hamiltonian, f.hf_index(), q[0], rc.subspace);
  json doc = projected_to_json(cs.projected);
  json chosen = json::array();
  for (const auto& c : cs.selection.chosen) {
    chosen.push_back({{"source", to_string(c.source)},
                      {"pauli", c.op.to_string()},
                      {"sign", c.sign},
                      {"deleted_weight", c.deleted_weight}});
  }
  doc["name"] = f.name;
  doc["stabilizers"] = chosen;
  doc["e_noncontextual_hartree"] = cs.noncontextual.energy;
  doc["reference_bitstring"] = cs.reference.bitstring;
  run.emit(doc.dump(1) + "\n", "");
  return kExitOk;
}

int cmd_solve(const Options& o, Run& run) {
  const auto paths = expand_inputs(o.inputs);
  if (paths.size() != 1) throw ValidationError("solve takes exactly one fixture");
  const auto q = parse_qubits(o.qubits);
  if (q.size() != 1) throw ValidationError("solve takes a single --qubits value");
  run.add_fixture(paths[0]);
  const auto f = load_fixture(paths[0]);
  const auto rc = run_config(o);
  const auto cs = build_contextual_subspace(f.hamiltonian, f.hf_index(), q[0], rc.subspace);
  const auto a = make_ansatz(f, cs, rc.ansatz);
  const auto r = vqd(cs.projected, a.circuit, a.initial_state, rc.n_states, rc.solver);
  const auto err = energy_errors(r.energies, f.reference_energies);
  std::ostringstream csv;
  csv << "state,energy_hartree,reference_hartree,error_hartree,evaluations,converged\n";
  for (std::size_t k = 0; k < r.energies.size(); ++k) {
    csv << k << "," << num(r.energies[k]) << ","
        << (k < f.reference_energies.size() ? num(f.reference_energies[k]) : "") << ","
        << error_cell(err, k) << "," << r.iteration_counts[k] << ","
        << (r.converged[k] ? "true" : "false") << "\n";
  }
  json near = json::array();
  for (auto [i, j] : r.near_degenerate) near.push_back({i, j});
  run.summary() = {{"n_qubits", q[0]},
                   {"ansatz", o.ansatz},
                   {"n_parameters", a.circuit.n_parameters()},
                   {"beta_used", r.beta_used},
                   {"overlap_residuals", r.overlap_residuals},
                   {"near_degenerate", near},
                   {"iteration_unit", "cost-function evaluations"}};
  run.emit(csv.str(), "#");
  if (!o.svg.empty()) {
    Series s{"energy", {}};
    for (std::size_t k = 0; k < r.energies.size(); ++k) s.points.push_back({double(k), r.energies[k]});
    write_svg(o.svg, f.name + " VQD energies", "state", "energy (hartree)", {s});
  }
  if (o.strict && any_unconverged(r)) throw NotConverged("an optimisation did not converge");
  return kExitOk;
}

int cmd_sweep(const Options& o, Run& run) {
  const auto paths = expand_inputs(o.inputs);
  if (paths.size() != 1) throw ValidationError("sweep takes exactly one fixture");
  run.add_fixture(paths[0]);
  const auto f = load_fixture(paths[0]);
  const auto rc = run_config(o);
  const auto rows = qubit_sweep(f, parse_qubits(o.qubits), rc);
  std::ostringstream csv;
  csv << "n_qubits,state,energy_hartree,error_hartree,evaluations,converged,failure\n";
  std::size_t ok = 0;
  bool unconverged = false;
  std::vector<Series> series(rc.n_states);
  for (std::size_t k = 0; k < rc.n_states; ++k) series[k].label = "state " + std::to_string(k);
  for (const auto& row : rows) {
    if (row.failure) {
      std::string msg = *row.failure;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      csv << row.n_qubits << ",,,,,," << '"' << msg << '"' << "\n";
      continue;
    }
    ++ok;
    unconverged |= any_unconverged(row.result);
    for (std::size_t k = 0; k < row.result.energies.size(); ++k) {
      csv << row.n_qubits << "," << k << "," << num(row.result.energies[k]) << ","
          << error_cell(row.errors, k) << "," << row.result.iteration_counts[k] << ","
          << (row.result.converged[k] ? "true" : "false") << ",\n";
      if (k < row.errors.size()) {
        series[k].points.push_back({double(row.n_qubits), std::log10(std::max(row.errors[k], 1e-16))});
      }
    }
  }
  run.emit(csv.str(), "#");
  if (!o.svg.empty()) {
    write_svg(o.svg, f.name + " error vs qubits", "qubits", "log10 error (hartree)", series);
  }
  if (ok == 0) throw SolverError("every sweep row failed", 0.0);
  if (o.strict && unconverged) throw NotConverged("an optimisation did not converge");
  return kExitOk;
}

int cmd_pes(const Options& o, Run& run) {
  const auto paths = expand_inputs(o.inputs);
  const auto q = parse_qubits(o.qubits);
  if (q.size() != 1) throw ValidationError("pes takes a single --qubits value");
  std::vector<MoleculeFixture> fixtures;
  for (const auto& p : paths) fixtures.push_back(load_fixture(p));
  // Scan in bond-length order; warm starts follow it.
  std::vector<std::size_t> idx(fixtures.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return fixtures[a].bond_length().value_or(0.0) < fixtures[b].bond_length().value_or(0.0);
  });
  std::vector<MoleculeFixture> ordered;
  for (auto i : idx) {
    ordered.push_back(fixtures[i]);
    run.add_fixture(paths[i]);
  }
  const auto rc = run_config(o);
  const auto scan = pes_scan(ordered, q[0], rc, o.warm_start);
  std::ostringstream csv;
  csv << "bond_length_angstrom,state,energy_hartree,error_hartree,evaluations,converged,failure\n";
  std::size_t ok = 0;
  bool unconverged = false;
  std::vector<Series> series(rc.n_states);
  for (std::size_t k = 0; k < rc.n_states; ++k) series[k].label = "state " + std::to_string(k);
  for (const auto& p : scan.points) {
    const std::string x = p.bond_length ? num(*p.bond_length) : p.name;
    if (p.failure) {
      std::string msg = *p.failure;
      std::replace(msg.begin(), msg.end(), ',', ';');
      csv << x << ",,,,,," << '"' << msg << '"' << "\n";
      continue;
    }
    ++ok;
    unconverged |= any_unconverged(p.result);
    for (std::size_t k = 0; k < p.result.energies.size(); ++k) {
      csv << x << "," << k << "," << num(p.result.energies[k]) << "," << error_cell(p.errors, k)
          << "," << p.result.iteration_counts[k] << ","
          << (p.result.converged[k] ? "true" : "false") << ",\n";
      if (p.bond_length) series[k].points.push_back({*p.bond_length, p.result.energies[k]});
    }
  }
  json stats = json::array();
  for (std::size_t k = 0; k < scan.iterations.size(); ++k) {
    stats.push_back({{"state", k},
                     {"mean_evaluations", scan.iterations[k].mean},
                     {"stddev_evaluations", scan.iterations[k].stddev}});
  }
  run.summary() = {{"ansatz", o.ansatz},
                   {"repeats", o.repeats},
                   {"n_qubits", q[0]},
                   {"warm_start", o.warm_start},
                   {"iteration_unit", "cost-function evaluations"},
                   {"total_evaluations", scan.total_evaluations},
                   {"per_state", stats}};
  run.emit(csv.str(), "#");
  if (!o.svg.empty()) {
    write_svg(o.svg, ordered.front().name + " potential energy surface", "bond length (angstrom)",
              "energy (hartree)", series);
  }
  if (ok == 0) throw SolverError("every scan point failed", 0.0);
  if (o.strict && unconverged) throw NotConverged("an optimisation did not converge");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextual-subspace VQD toolkit"};
  app.set_version_flag("--version", CSVQD_VERSION);
  app.require_subcommand(1);
  Options o;

  auto inputs = [&](CLI::App* sub) {
    sub->add_option("fixtures", o.inputs, "Fixture JSON files (globs allowed)")->required();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON bundle of the options below; flags override it");
    sub->add_option("--out", o.out, "Output file; a .manifest.json sidecar is written next to it");
    sub->add_option("--strategy", o.strategy, "Partition strategy: greedy or diagonal");
  };
  auto solver = [&](CLI::App* sub) {
    sub->add_option("--qubits", o.qubits, "Reduced qubit count: 6, a list 2,4,6 or a range 1:8");
    sub->add_option("--states", o.states, "Number of VQD states");
    sub->add_option("--ansatz", o.ansatz, "uccsd, ryrz or nblock");
    sub->add_option("--repeats", o.repeats, "Layer repeats for the hardware-efficient ansaetze");
    sub->add_option("--layout", o.layout, "RyRz entangler: full or linear");
    sub->add_option("--beta", o.beta, "Deflation weight (hartree); default 2*l1(H)+1");
    sub->add_option("--seed", o.seed, "Seed for random initialisation");
    sub->add_option("--optimizer", o.optimizer, "nelder-mead or lbfgs");
    sub->add_option("--init", o.init, "Initial parameters: zero or random");
    sub->add_option("--max-evals", o.max_evaluations, "Cost evaluations allowed per state");
    sub->add_option("--order", o.order, "Explicit stabilizer candidate indices, comma separated");
    sub->add_option("--svg", o.svg, "Also write an SVG line chart");
    sub->add_flag("--strict", o.strict, "Exit 3 if any optimisation fails to converge");
  };

  auto* validate = app.add_subcommand("validate", "Check fixture files against the schema");
  inputs(validate);
  auto* decompose = app.add_subcommand("decompose", "Noncontextual/contextual partition report");
  inputs(decompose);
  common(decompose);
  auto* project = app.add_subcommand("project", "Emit the projected Hamiltonian as JSON");
  inputs(project);
  common(project);
  solver(project);
  auto* solve = app.add_subcommand("solve", "CS-VQD at one qubit count");
  inputs(solve);
  common(solve);
  solver(solve);
  auto* sweep = app.add_subcommand("sweep", "CS-VQD error versus qubit count");
  inputs(sweep);
  common(sweep);
  solver(sweep);
  auto* pes = app.add_subcommand("pes", "Potential energy surface scan");
  inputs(pes);
  common(pes);
  solver(pes);
  pes->add_flag("--warm-start", o.warm_start, "Start each point from the previous optimum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  std::vector<std::string> args(argv, argv + argc);
  CLI::App* sub = app.get_subcommands().front();
  Run run(sub->get_name(), o, args);
  try {
    if (!o.config.empty()) {
      // Re-parse so explicit flags win over the bundle.
      apply_config_file(o, o.config);
      app.parse(argc, argv);
    }
    if (sub == validate) return cmd_validate(o);
    if (sub == decompose) return cmd_decompose(o, run);
    if (sub == project) return cmd_project(o, run);
    if (sub == solve) return cmd_solve(o, run);
    if (sub == sweep) return cmd_sweep(o, run);
    if (sub == pes) return cmd_pes(o, run);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const RangeError& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DimensionError& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const NotConverged& e) {
    std::cerr << "not converged: " << e.what() << "\n";
    return kExitSolver;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ContractError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
