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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sfvqd/cli.hpp"
#include "sfvqd/errors.hpp"

namespace {

using namespace sfvqd;
using namespace sfvqd::cli;

int run(const std::string& config, const std::vector<std::string>& fixtures, std::optional<std::uint64_t> seed,
        const std::string& out, std::optional<int> jobs, const std::vector<std::string>& methods,
        const std::vector<std::size_t>& layers, std::optional<std::size_t> states, std::optional<std::size_t> shots,
        std::optional<double> penalty) {
  RunManifest m = config.empty() ? manifest_from_json(nlohmann::json::object()) : load_manifest(config);
  for (const auto& f : fixtures) m.fixtures.emplace_back(f);
  if (seed) m.config.seed = *seed;
  if (!out.empty()) m.output = out;
  if (jobs) m.jobs = *jobs;
  if (!methods.empty()) {
    m.methods.clear();
    for (const auto& s : methods) m.methods.push_back(method_from_string(s));
  }
  if (!layers.empty()) m.layers = layers;
  if (states) m.config.n_states = *states;
  if (shots) {
    m.config.mode = CostMode::Shot;
    m.config.n_shot = *shots;
  }
  if (penalty) m.config.c_penalty = *penalty;

  const RunOutcome outcome = cmd_run(m);
  write_run_csv(std::cout, outcome.rows);
  for (const auto& f : outcome.flags) std::cerr << "flag: " << f << '\n';
  return outcome.all_converged ? kExitOk : kExitNotConverged;
}

int reference(const std::vector<std::string>& fixtures, const std::vector<std::string>& spins, std::size_t states,
              const std::string& out) {
  std::vector<std::filesystem::path> paths(fixtures.begin(), fixtures.end());
  std::vector<HalfInt> s;
  for (const auto& t : spins) s.push_back(parse_half_int(t));
  const auto rows = cmd_reference(paths, s, states);
  if (out.empty()) {
    write_reference_csv(std::cout, rows);
  } else {
    std::ofstream f(out);
    if (!f) throw IoError("cannot write " + out);
    write_reference_csv(f, rows);
  }
  for (const auto& r : rows) {
    if (!r.complete) std::cerr << "flag: " << r.molecule << " " << r.mode << " " << r.lambda << " S=" << r.spin
                               << ": fewer states than requested\n";
  }
  return kExitOk;
}

int probe(const std::string& fixture, const std::string& spin, const std::string& mz) {
  const HalfInt s = parse_half_int(spin), m = parse_half_int(mz);
  const ProbeReport rep = cmd_probe(fixture, s, m);
  if (!rep.found) {
    std::cout << "no eigenstate with S=" << s.str() << " m_z=" << m.str() << '\n';
    return kExitValidation;
  }
  std::printf("eigenstate E=%.10f  S=%s  m_z=%s  ancillas=%zu\n", rep.energy, s.str().c_str(), m.str().c_str(), rep.n_anc);
  for (const auto& [mx, p] : rep.distribution) std::printf("  m_x=%+d  p=%.10f\n", mx, p);
  std::printf("pass mass %.10f  expected %.10f  %s\n", rep.pass_mass, rep.expected, rep.ok ? "ok" : "MISMATCH");
  return rep.ok ? kExitOk : kExitValidation;
}

int validate(const std::vector<std::string>& fixtures) {
  std::vector<std::filesystem::path> paths(fixtures.begin(), fixtures.end());
  bool all_ok = true;
  for (const auto& v : cmd_validate(paths)) {
    if (!v.error.empty()) {
      std::cout << v.path.string() << ": error: " << v.error << '\n';
    } else {
      std::printf("%s: %s (herm %.1e, [H,Sz] %.1e, [H,S2] %.1e, [H,N] %.1e)%s\n", v.path.string().c_str(),
                  v.physics.clean() ? "clean" : "VIOLATION", v.physics.hermiticity, v.physics.sz_commutator,
                  v.physics.s2_commutator, v.physics.n_commutator, v.physics.suspicious ? " suspicious: no terms" : "");
      for (const auto& msg : v.physics.violations) std::cout << "  " << msg << '\n';
    }
    all_ok = all_ok && v.ok();
  }
  return all_ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-filtering variational quantum deflation"};
  app.require_subcommand(1);

  std::string config, out;
  std::vector<std::string> fixtures, methods, spins = {"0"};
  std::vector<std::size_t> layers;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::size_t> states, shots;
  std::optional<double> penalty;
  std::size_t ref_states = 5;
  std::string spin = "0", mz = "0";

  auto* run_cmd = app.add_subcommand("run", "Run a VQD sweep");
  run_cmd->add_option("--config", config, "JSON run configuration");
  run_cmd->add_option("--fixture", fixtures, "Extra fixture paths");
  run_cmd->add_option("--seed", seed, "Master seed");
  run_cmd->add_option("--out", out, "Output directory");
  run_cmd->add_option("--jobs", jobs, "Parallel sweep workers");
  run_cmd->add_option("--method", methods, "VQD/SP, VQD/SSP or sfVQD/SSP");
  run_cmd->add_option("--layers", layers, "Ansatz layers");
  run_cmd->add_option("--states", states, "States to converge");
  run_cmd->add_option("--shots", shots, "Shot mode with this many shots per term");
  run_cmd->add_option("--penalty", penalty, "c_penalty for out-of-sector blocks");

  auto* ref_cmd = app.add_subcommand("reference", "Exact sector-resolved energies");
  ref_cmd->add_option("fixtures", fixtures, "Fixture paths")->required();
  ref_cmd->add_option("--spin", spins, "Target spins (m_z = S sector)");
  ref_cmd->add_option("--states", ref_states, "States per sector");
  ref_cmd->add_option("--out", out, "CSV path (default stdout)");

  auto* probe_cmd = app.add_subcommand("probe", "Screen an exact eigenstate");
  std::string probe_fixture;
  probe_cmd->add_option("fixture", probe_fixture, "Fixture path")->required();
  probe_cmd->add_option("--spin", spin, "Total spin S");
  probe_cmd->add_option("--mz", mz, "Projection m_z");

  auto* val_cmd = app.add_subcommand("validate", "Check fixtures");
  val_cmd->add_option("fixtures", fixtures, "Fixture paths")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(config, fixtures, seed, out, jobs, methods, layers, states, shots, penalty);
    if (*ref_cmd) return reference(fixtures, spins, ref_states, out);
    if (*probe_cmd) return probe(probe_fixture, spin, mz);
    if (*val_cmd) return validate(fixtures);
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
