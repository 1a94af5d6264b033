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
#include <string>
#include <vector>

#include "json.hpp"

#include "sfvqd/pauli.hpp"
#include "sfvqd/spinops.hpp"

namespace sfvqd {

inline constexpr int kSchemaVersion = 1;

struct GeometrySpec {
  std::string mode;  // bond, sym-stretch or antisym-stretch
  double r0_angstrom = 0.0;
  double dr_angstrom = 0.0;
  double lambda = 0.0;

  friend bool operator==(const GeometrySpec&, const GeometrySpec&) = default;
};

struct HamiltonianRecord {
  int schema_version = kSchemaVersion;
  std::string molecule;
  GeometrySpec geometry;
  std::string basis = "STO-3G";
  std::size_t n_spatial = 0;
  int n_alpha = 0;
  int n_beta = 0;
  /// Informational; already folded into the identity term.
  double core_energy = 0.0;
  /// Canonical order (sorted by word, duplicates merged).
  std::vector<PauliTerm> terms;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  /// Unknown top-level fields kept by lenient loads.
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  PauliSum hamiltonian() const;
  /// Sector of the declared electron counts with S = |m_z|.
  SpinSector sector() const;

  friend bool operator==(const HamiltonianRecord& a, const HamiltonianRecord& b);
};

enum class LoadMode { Strict, Lenient };

HamiltonianRecord parse_record(const std::string& text, LoadMode mode = LoadMode::Strict);
HamiltonianRecord load(const std::filesystem::path& path, LoadMode mode = LoadMode::Strict);
std::string dump_record(const HamiltonianRecord& record);
void save(const HamiltonianRecord& record, const std::filesystem::path& path);

/// "{molecule lowercase}_{mode}_l{lambda:+.3f}.json"
std::string fixture_filename(const std::string& molecule, const std::string& mode, double lambda);

struct PhysicsReport {
  double hermiticity = 0.0;
  double sz_commutator = 0.0;
  double s2_commutator = 0.0;
  double n_commutator = 0.0;
  std::vector<std::string> violations;
  /// Set for records that pass only vacuously (no terms).
  bool suspicious = false;

  bool clean() const { return violations.empty(); }
};

PhysicsReport validate_physics(const HamiltonianRecord& record, double tolerance = 1e-8);

}  // namespace sfvqd
