// Copyright 2026 The sfvqd Authors
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

#include "sfvqd/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "sfvqd/errors.hpp"
#include "sfvqd/oracle.hpp"
#include "sfvqd/screen.hpp"

namespace sfvqd::cli {

using nlohmann::json;

const std::vector<std::string> kRunColumns = {"molecule", "mode",           "lambda",  "method",
                                              "layers",   "state",          "energy",  "s_squared",
                                              "overlap_checks", "restart",  "converged", "wall_time_s"};
const std::vector<std::string> kReferenceColumns = {"molecule", "mode",  "lambda", "n_alpha", "n_beta",
                                                    "spin",     "state", "energy", "complete"};

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("bad number '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw ParseError("bad count '" + s + "'");
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError("bad boolean '" + s + "'");
}

std::vector<std::vector<std::string>> read_table(std::istream& in, const std::vector<std::string>& columns) {
  std::string line;
  if (!std::getline(in, line) || split(line) != columns) throw ParseError("CSV header does not match");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != columns.size()) throw ParseError("CSV row has wrong column count");
    rows.push_back(std::move(cells));
  }
  return rows;
}

template <class T>
std::vector<T> one_or_many(const json& v, const std::string& key) {
  if (v.is_array()) return v.get<std::vector<T>>();
  try {
    return {v.get<T>()};
  } catch (const json::exception&) {
    throw ValidationError("config." + key + ": wrong type");
  }
}

HamiltonianRecord load_validated(const std::filesystem::path& path) {
  HamiltonianRecord r = load(path);
  const PhysicsReport rep = validate_physics(r);
  if (!rep.clean()) throw ValidationError(path.string() + ": " + rep.violations.front());
  if (rep.suspicious) throw ValidationError(path.string() + ": empty Hamiltonian");
  return r;
}

}  // namespace

HalfInt parse_half_int(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      const double v = to_double(text);
      const double twice = 2.0 * v;
      if (std::abs(twice - std::round(twice)) > 1e-12) throw InvalidArgument("not a half-integer: " + text);
      return HalfInt::from_twice(static_cast<int>(std::lround(twice)));
    }
    if (text.substr(slash + 1) != "2") throw InvalidArgument("not a half-integer: " + text);
    const double num = to_double(text.substr(0, slash));
    if (num != std::round(num)) throw InvalidArgument("not a half-integer: " + text);
    return HalfInt::from_twice(static_cast<int>(num));
  } catch (const ParseError&) {
    throw InvalidArgument("not a half-integer: " + text);
  }
}

RunManifest manifest_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError("config: expected object");
  static const std::set<std::string> known = {
      "fixtures", "method",   "layers",  "restarts",  "n_states",     "target_spin", "mode",
      "n_shot",   "c_penalty", "optimizer", "seed",   "overlap_mode", "orthogonality_tolerance",
      "init_stddev", "output", "emit",    "jobs",     "plot_hook"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known.count(it.key())) throw ValidationError("config." + it.key() + ": unknown field");
  }
  RunManifest m;
  try {
    if (doc.contains("fixtures")) {
      for (const std::string& f : one_or_many<std::string>(doc["fixtures"], "fixtures")) {
        std::filesystem::path p(f);
        m.fixtures.push_back(p.is_absolute() ? p : base_dir / p);
      }
    }
    if (doc.contains("method")) {
      m.methods.clear();
      for (const std::string& s : one_or_many<std::string>(doc["method"], "method")) m.methods.push_back(method_from_string(s));
    }
    if (doc.contains("layers")) m.layers = one_or_many<std::size_t>(doc["layers"], "layers");
    VqdConfig& c = m.config;
    if (doc.contains("restarts")) c.restarts = doc["restarts"].get<std::size_t>();
    if (doc.contains("n_states")) c.n_states = doc["n_states"].get<std::size_t>();
    if (doc.contains("target_spin")) {
      const json& s = doc["target_spin"];
      m.target_spin = s.is_string() ? parse_half_int(s.get<std::string>()) : parse_half_int(fmt(s.get<double>()));
    }
    if (doc.contains("mode")) c.mode = cost_mode_from_string(doc["mode"].get<std::string>());
    if (doc.contains("n_shot")) c.n_shot = doc["n_shot"].get<std::size_t>();
    if (doc.contains("c_penalty")) {
      c.c_penalty = doc["c_penalty"].get<double>();
      if (!(c.c_penalty < 1.0)) throw ValidationError("config.c_penalty: must be below 1");
    }
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("overlap_mode")) {
      const std::string om = doc["overlap_mode"].get<std::string>();
      if (om == "pre-screen") c.overlap_mode = OverlapMode::PreScreen;
      else if (om == "post-screen") c.overlap_mode = OverlapMode::PostScreen;
      else throw ValidationError("config.overlap_mode: expected pre-screen or post-screen");
    }
    if (doc.contains("orthogonality_tolerance")) c.orthogonality_tolerance = doc["orthogonality_tolerance"].get<double>();
    if (doc.contains("init_stddev")) c.init_stddev = doc["init_stddev"].get<double>();
    if (doc.contains("optimizer")) {
      const json& o = doc["optimizer"];
      if (!o.is_object()) throw ValidationError("config.optimizer: expected object");
      OptimizerSpec& s = c.optimizer;
      for (auto it = o.begin(); it != o.end(); ++it) {
        const std::string& k = it.key();
        if (k == "name") s.name = it->get<std::string>();
        else if (k == "max_evaluations") s.max_evaluations = it->get<std::size_t>();
        else if (k == "tolerance") s.tolerance = it->get<double>();
        else if (k == "gradient_tolerance") s.gradient_tolerance = it->get<double>();
        else if (k == "fd_step") s.fd_step = it->get<double>();
        else if (k == "initial_step") s.initial_step = it->get<double>();
        else if (k == "spsa_a") s.spsa_a = it->get<double>();
        else if (k == "spsa_c") s.spsa_c = it->get<double>();
        else if (k == "spsa_stability") s.spsa_stability = it->get<double>();
        else throw ValidationError("config.optimizer." + k + ": unknown field");
      }
      make_optimizer(s);
    }
    if (doc.contains("output")) m.output = doc["output"].get<std::string>();
    if (doc.contains("emit")) {
      m.emit_csv = m.emit_plot_data = false;
      for (const std::string& e : one_or_many<std::string>(doc["emit"], "emit")) {
        if (e == "csv") m.emit_csv = true;
        else if (e == "plot-data") m.emit_plot_data = true;
        else throw ValidationError("config.emit: unknown target '" + e + "'");
      }
    }
    if (doc.contains("jobs")) m.jobs = doc["jobs"].get<int>();
    if (doc.contains("plot_hook")) m.plot_hook = doc["plot_hook"].get<std::string>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (m.jobs < 1) throw ValidationError("config.jobs: must be at least 1");
  if (m.methods.empty() || m.layers.empty()) throw ValidationError("config: method and layers must be non-empty");
  return m;
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return manifest_from_json(doc, path.parent_path());
}

void write_run_csv(std::ostream& out, const std::vector<RunRow>& rows) {
  out << join(kRunColumns) << '\n';
  for (const RunRow& r : rows) {
    out << join({r.molecule, r.mode, fmt(r.lambda), r.method, std::to_string(r.layers), std::to_string(r.state),
                 fmt(r.energy), fmt(r.s_squared), std::to_string(r.overlap_checks), std::to_string(r.restart),
                 r.converged ? "true" : "false", fmt(r.wall_time_s)})
        << '\n';
  }
}

std::vector<RunRow> read_run_csv(std::istream& in) {
  std::vector<RunRow> rows;
  for (const auto& c : read_table(in, kRunColumns)) {
    rows.push_back({c[0], c[1], to_double(c[2]), c[3], to_size(c[4]), to_size(c[5]), to_double(c[6]),
                    to_double(c[7]), to_size(c[8]), to_size(c[9]), to_bool(c[10]), to_double(c[11])});
  }
  return rows;
}

void write_reference_csv(std::ostream& out, const std::vector<ReferenceRow>& rows) {
  out << join(kReferenceColumns) << '\n';
  for (const ReferenceRow& r : rows) {
    out << join({r.molecule, r.mode, fmt(r.lambda), std::to_string(r.n_alpha), std::to_string(r.n_beta), r.spin,
                 std::to_string(r.state), fmt(r.energy), r.complete ? "true" : "false"})
        << '\n';
  }
}

std::vector<ReferenceRow> read_reference_csv(std::istream& in) {
  std::vector<ReferenceRow> rows;
  for (const auto& c : read_table(in, kReferenceColumns)) {
    rows.push_back({c[0], c[1], to_double(c[2]), std::stoi(c[3]), std::stoi(c[4]), c[5], to_size(c[6]),
                    to_double(c[7]), to_bool(c[8])});
  }
  return rows;
}

RunOutcome cmd_run(const RunManifest& manifest) {
  if (manifest.fixtures.empty()) throw ValidationError("no fixtures given");
  std::vector<HamiltonianRecord> records;
  for (const auto& p : manifest.fixtures) records.push_back(load_validated(p));

  struct Point {
    std::size_t fixture;
    Method method;
    std::size_t layers;
  };
  std::vector<Point> points;
  for (std::size_t f = 0; f < records.size(); ++f)
    for (Method m : manifest.methods)
      for (std::size_t l : manifest.layers) points.push_back({f, m, l});

  // Check every config before spending any compute.
  std::vector<VqdConfig> configs;
  for (const Point& p : points) {
    const HamiltonianRecord& r = records[p.fixture];
    VqdConfig c = manifest.config;
    c.method = p.method;
    c.layers = p.layers;
    c.sector = SpinSector::for_target(r.n_alpha + r.n_beta, manifest.target_spin);
    if (manifest.jobs > 1) c.threads = 1;
    try {
      c.validate(r.n_spatial);
    } catch (const Error& e) {
      throw ValidationError(manifest.fixtures[p.fixture].string() + ": " + e.what());
    }
    configs.push_back(c);
  }

  std::vector<VqdResult> results(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        const HamiltonianRecord& r = records[points[i].fixture];
        results[i] = run_deflation(configs[i], r.hamiltonian(), r.n_spatial);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(manifest.jobs), points.size());
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  RunOutcome outcome;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const HamiltonianRecord& r = records[points[i].fixture];
    for (const StateResult& s : results[i].states) {
      outcome.rows.push_back({r.molecule, r.geometry.mode, r.geometry.lambda, to_string(points[i].method),
                              points[i].layers, s.index, s.energy, s.s_squared, s.cumulative_overlap_checks,
                              s.selected_restart, s.converged, s.wall_time_s});
    }
    for (const std::string& f : results[i].flags) {
      outcome.flags.push_back(manifest.fixtures[points[i].fixture].filename().string() + " " +
                              to_string(points[i].method) + " L=" + std::to_string(points[i].layers) + ": " + f);
    }
    outcome.all_converged = outcome.all_converged && results[i].all_converged();
  }

  if (manifest.emit_csv || manifest.emit_plot_data) std::filesystem::create_directories(manifest.output);
  if (manifest.emit_csv) {
    std::ofstream out(manifest.output / "results.csv");
    if (!out) throw IoError("cannot write results.csv");
    write_run_csv(out, outcome.rows);
  }
  if (manifest.emit_plot_data) {
    std::ofstream out(manifest.output / "plot_data.csv");
    if (!out) throw IoError("cannot write plot_data.csv");
    out << "molecule,mode,lambda,method,layers,state,energy,reference_energy,error,s_squared\n";
    std::vector<CasciReference> refs;
    for (const HamiltonianRecord& r : records) {
      refs.push_back(casci_reference(r.hamiltonian(), SpinSector::for_target(r.n_alpha + r.n_beta, manifest.target_spin),
                                     manifest.config.n_states));
    }
    std::size_t row = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const CasciReference& ref = refs[points[i].fixture];
      for (std::size_t k = 0; k < results[i].states.size(); ++k, ++row) {
        const RunRow& rr = outcome.rows[row];
        const double e_ref = k < ref.energies.size() ? ref.energies[k] : std::numeric_limits<double>::quiet_NaN();
        out << join({rr.molecule, rr.mode, fmt(rr.lambda), rr.method, std::to_string(rr.layers),
                     std::to_string(rr.state), fmt(rr.energy), fmt(e_ref), fmt(rr.energy - e_ref), fmt(rr.s_squared)})
            << '\n';
      }
    }
    out.close();
    if (!manifest.plot_hook.empty()) {
      std::string cmd = manifest.plot_hook;
      for (auto pos = cmd.find("{out}"); pos != std::string::npos; pos = cmd.find("{out}"))
        cmd.replace(pos, 5, manifest.output.string());
      if (std::system(cmd.c_str()) != 0) outcome.flags.push_back("plot hook failed: " + cmd);
    }
  }
  return outcome;
}

std::vector<ReferenceRow> cmd_reference(const std::vector<std::filesystem::path>& fixtures,
                                        const std::vector<HalfInt>& spins, std::size_t n_states) {
  std::vector<ReferenceRow> rows;
  for (const auto& path : fixtures) {
    const HamiltonianRecord r = load(path);
    const auto labeled = labeled_spectrum(r.hamiltonian());
    for (HalfInt s : spins) {
      const int n_elec = r.n_alpha + r.n_beta;
      const int twice_mz = s.twice();
      // m_z = S requires n_alpha - n_beta = 2S within the fixture's electron count.
      const int n_alpha = (n_elec + twice_mz) / 2;
      const int n_beta = n_elec - n_alpha;
      const bool feasible = (n_elec + twice_mz) % 2 == 0 && n_beta >= 0 &&
                            n_alpha <= static_cast<int>(r.n_spatial);
      CasciReference ref;
      if (feasible && n_states > 0) ref = casci_reference(labeled, SpinSector{n_alpha, n_beta, s}, n_states);
      ref.complete = ref.energies.size() == n_states;
      for (std::size_t k = 0; k < ref.energies.size(); ++k) {
        rows.push_back({r.molecule, r.geometry.mode, r.geometry.lambda, n_alpha, n_beta, s.str(), k, ref.energies[k],
                        ref.complete});
      }
      if (ref.energies.empty()) {
        rows.push_back({r.molecule, r.geometry.mode, r.geometry.lambda, n_alpha, n_beta, s.str(), 0,
                        std::numeric_limits<double>::quiet_NaN(), n_states == 0});
      }
    }
  }
  return rows;
}

ProbeReport cmd_probe(const std::filesystem::path& fixture, HalfInt spin, HalfInt m_z) {
  const HamiltonianRecord r = load(fixture);
  ProbeReport rep;
  const int n_elec = r.n_alpha + r.n_beta;
  if ((n_elec + m_z.twice()) % 2 != 0) return rep;
  const int n_alpha = (n_elec + m_z.twice()) / 2;
  const auto states = select_states(labeled_spectrum(r.hamiltonian()), n_alpha, n_elec - n_alpha, spin);
  if (states.empty()) return rep;
  rep.found = true;
  rep.energy = states.front().energy;
  rep.n_anc = required_ancillas(r.n_spatial, static_cast<std::size_t>(n_elec));
  rep.distribution = ancilla_distribution(apply_screen(states.front().vector, rep.n_anc), rep.n_anc);
  for (const auto& [mx, p] : rep.distribution) {
    if (HalfInt(mx).abs() <= m_z.abs()) rep.pass_mass += p;
  }
  rep.expected = pass_probability(spin, m_z);
  rep.ok = std::abs(rep.pass_mass - rep.expected) <= 1e-6;
  return rep;
}

std::vector<ValidationReport> cmd_validate(const std::vector<std::filesystem::path>& fixtures) {
  std::vector<ValidationReport> out;
  for (const auto& p : fixtures) {
    ValidationReport v;
    v.path = p;
    try {
      v.physics = validate_physics(load(p));
    } catch (const Error& e) {
      v.error = e.what();
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace sfvqd::cli
