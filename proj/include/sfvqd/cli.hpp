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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sfvqd/hamio.hpp"
#include "sfvqd/vqd.hpp"

namespace sfvqd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNotConverged = 3;

/// One sweep: every fixture × method × layer count. The electron sector of
/// each run comes from its fixture; `target_spin` selects the multiplet.
struct RunManifest {
  VqdConfig config;
  HalfInt target_spin;
  std::vector<Method> methods = {Method::SfVqdSsp};
  std::vector<std::size_t> layers = {6};
  std::vector<std::filesystem::path> fixtures;
  std::filesystem::path output = "out";
  bool emit_csv = true;
  bool emit_plot_data = false;
  /// Shell command run after plot data is written; "{out}" expands to the
  /// output directory.
  std::string plot_hook;
  int jobs = 1;
};

/// Relative fixture paths resolve against `base_dir`. Unknown keys raise
/// ValidationError.
RunManifest manifest_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".");
RunManifest load_manifest(const std::filesystem::path& path);

struct RunRow {
  std::string molecule;
  std::string mode;
  double lambda = 0.0;
  std::string method;
  std::size_t layers = 0;
  std::size_t state = 0;
  double energy = 0.0;
  double s_squared = 0.0;
  std::size_t overlap_checks = 0;
  std::size_t restart = 0;
  bool converged = false;
  double wall_time_s = 0.0;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

struct ReferenceRow {
  std::string molecule;
  std::string mode;
  double lambda = 0.0;
  int n_alpha = 0;
  int n_beta = 0;
  std::string spin;
  std::size_t state = 0;
  /// NaN in the placeholder row of an infeasible or short block.
  double energy = 0.0;
  bool complete = true;

  friend bool operator==(const ReferenceRow&, const ReferenceRow&) = default;
};

extern const std::vector<std::string> kRunColumns;
extern const std::vector<std::string> kReferenceColumns;

void write_run_csv(std::ostream& out, const std::vector<RunRow>& rows);
std::vector<RunRow> read_run_csv(std::istream& in);
void write_reference_csv(std::ostream& out, const std::vector<ReferenceRow>& rows);
std::vector<ReferenceRow> read_reference_csv(std::istream& in);

struct RunOutcome {
  std::vector<RunRow> rows;
  std::vector<std::string> flags;
  bool all_converged = true;
};

/// Validates every fixture first, runs the sweep, writes the requested files.
RunOutcome cmd_run(const RunManifest& manifest);

/// Sector-resolved exact energies. Each spin S uses the sector with m_z = S.
std::vector<ReferenceRow> cmd_reference(const std::vector<std::filesystem::path>& fixtures,
                                        const std::vector<HalfInt>& spins, std::size_t n_states);

struct ProbeReport {
  bool found = false;
  double energy = 0.0;
  std::size_t n_anc = 0;
  std::map<int, double> distribution;
  double pass_mass = 0.0;
  double expected = 0.0;
  bool ok = false;
};

ProbeReport cmd_probe(const std::filesystem::path& fixture, HalfInt spin, HalfInt m_z);

struct ValidationReport {
  std::filesystem::path path;
  std::string error;
  PhysicsReport physics;

  bool ok() const { return error.empty() && physics.clean(); }
};

std::vector<ValidationReport> cmd_validate(const std::vector<std::filesystem::path>& fixtures);

HalfInt parse_half_int(const std::string& text);

}  // namespace sfvqd::cli
