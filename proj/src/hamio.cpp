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

#include "sfvqd/hamio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sfvqd/errors.hpp"

namespace sfvqd {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kKnownFields = {"schema_version", "molecule", "geometry", "basis",   "n_spatial",
                                            "n_alpha",        "n_beta",   "core_energy", "terms", "metadata"};

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing");
  return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw ParseError(path + "." + key + ": expected number");
  return v.get<double>();
}

long integer(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_integer()) throw ParseError(path + "." + key + ": expected integer");
  return v.get<long>();
}

std::string text(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) throw ParseError(path + "." + key + ": expected string");
  return v.get<std::string>();
}

std::vector<PauliTerm> canonical_terms(const std::vector<PauliTerm>& terms) {
  std::map<std::string, double> merged;
  for (const PauliTerm& t : terms) merged[t.word] += t.coefficient;
  std::vector<PauliTerm> out;
  out.reserve(merged.size());
  for (const auto& [w, c] : merged) out.push_back({c, w});
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

PauliSum HamiltonianRecord::hamiltonian() const {
  PauliSum h(2 * n_spatial);
  for (const PauliTerm& t : terms) h.add(t.coefficient, t.word);
  h.canonicalize();
  return h;
}

SpinSector HamiltonianRecord::sector() const {
  return {n_alpha, n_beta, HalfInt::from_twice(std::abs(n_alpha - n_beta))};
}

bool operator==(const HamiltonianRecord& a, const HamiltonianRecord& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].word != b.terms[i].word || a.terms[i].coefficient != b.terms[i].coefficient) return false;
  }
  return a.schema_version == b.schema_version && a.molecule == b.molecule && a.geometry == b.geometry &&
         a.basis == b.basis && a.n_spatial == b.n_spatial && a.n_alpha == b.n_alpha && a.n_beta == b.n_beta &&
         a.core_energy == b.core_energy && a.metadata == b.metadata && a.extra == b.extra;
}

HamiltonianRecord parse_record(const std::string& input, LoadMode mode) {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("$: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("$: expected object");

  HamiltonianRecord r;
  r.schema_version = static_cast<int>(integer(doc, "schema_version", "$"));
  if (r.schema_version != kSchemaVersion) {
    throw ParseError("$.schema_version: unsupported version " + std::to_string(r.schema_version));
  }
  r.molecule = text(doc, "molecule", "$");
  const json& geo = field(doc, "geometry", "$");
  r.geometry.mode = text(geo, "mode", "$.geometry");
  r.geometry.r0_angstrom = number(geo, "R0_angstrom", "$.geometry");
  r.geometry.dr_angstrom = number(geo, "dR_angstrom", "$.geometry");
  r.geometry.lambda = number(geo, "lambda", "$.geometry");
  r.basis = text(doc, "basis", "$");
  const long n_spatial = integer(doc, "n_spatial", "$");
  if (n_spatial < 1) throw ValidationError("$.n_spatial: must be positive");
  r.n_spatial = static_cast<std::size_t>(n_spatial);
  r.n_alpha = static_cast<int>(integer(doc, "n_alpha", "$"));
  r.n_beta = static_cast<int>(integer(doc, "n_beta", "$"));
  r.core_energy = number(doc, "core_energy", "$");

  const json& terms = field(doc, "terms", "$");
  if (!terms.is_array()) throw ParseError("$.terms: expected array");
  std::vector<PauliTerm> raw;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = "$.terms[" + std::to_string(i) + "]";
    PauliTerm t{number(terms[i], "coefficient", path), text(terms[i], "pauli", path)};
    if (!std::isfinite(t.coefficient)) throw ValidationError(path + ".coefficient: not finite");
    if (t.word.size() != 2 * r.n_spatial) {
      throw ValidationError(path + ".pauli: length " + std::to_string(t.word.size()) + " != " +
                            std::to_string(2 * r.n_spatial));
    }
    for (char c : t.word) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') throw ValidationError(path + ".pauli: bad letter");
    }
    raw.push_back(std::move(t));
  }
  r.terms = canonical_terms(raw);

  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("$.metadata: expected object");
    r.metadata = *it;
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (kKnownFields.count(it.key())) continue;
    if (mode == LoadMode::Strict) throw ParseError("$." + it.key() + ": unknown field");
    r.extra[it.key()] = it.value();
  }

  try {
    r.sector().validate(r.n_spatial);
  } catch (const UnsupportedSector&) {
    // Odd electron counts are storable even though the solver rejects them.
  } catch (const Error& e) {
    throw ValidationError(std::string("$: infeasible sector: ") + e.what());
  }
  return r;
}

HamiltonianRecord load(const std::filesystem::path& path, LoadMode mode) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_record(buf.str(), mode);
}

std::string dump_record(const HamiltonianRecord& r) {
  json doc = json::object();
  doc["schema_version"] = r.schema_version;
  doc["molecule"] = r.molecule;
  doc["geometry"] = {{"mode", r.geometry.mode},
                     {"R0_angstrom", r.geometry.r0_angstrom},
                     {"dR_angstrom", r.geometry.dr_angstrom},
                     {"lambda", r.geometry.lambda}};
  doc["basis"] = r.basis;
  doc["n_spatial"] = r.n_spatial;
  doc["n_alpha"] = r.n_alpha;
  doc["n_beta"] = r.n_beta;
  doc["core_energy"] = r.core_energy;
  json terms = json::array();
  for (const PauliTerm& t : canonical_terms(r.terms)) terms.push_back({{"pauli", t.word}, {"coefficient", t.coefficient}});
  doc["terms"] = std::move(terms);
  doc["metadata"] = r.metadata;
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) doc[it.key()] = it.value();
  return doc.dump(1);
}

void save(const HamiltonianRecord& record, const std::filesystem::path& path) {
  const std::string body = dump_record(record);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << body;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string fixture_filename(const std::string& molecule, const std::string& mode, double lambda) {
  std::string lower = molecule;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.3f", lambda);
  return lower + "_" + mode + "_l" + buf + ".json";
}

PhysicsReport validate_physics(const HamiltonianRecord& record, double tolerance) {
  PhysicsReport report;
  if (record.terms.empty()) {
    report.suspicious = true;
    return report;
  }
  const std::size_t n = record.n_spatial;
  const Eigen::MatrixXcd h = to_dense(record.hamiltonian());
  auto commutator = [&](const PauliSum& op) {
    const Eigen::MatrixXcd o = to_dense(op);
    return max_abs(h * o - o * h);
  };
  report.hermiticity = max_abs(h - h.adjoint());
  report.sz_commutator = commutator(build_spin_component(Axis::Z, n));
  report.s2_commutator = commutator(build_s_squared(n));
  report.n_commutator = commutator(build_total_number(n));
  if (report.hermiticity > tolerance) report.violations.push_back("H is not Hermitian");
  if (report.sz_commutator > tolerance) report.violations.push_back("[H, S_z] != 0");
  if (report.s2_commutator > tolerance) report.violations.push_back("[H, S^2] != 0");
  if (report.n_commutator > tolerance) report.violations.push_back("[H, N] != 0");
  return report;
}

}  // namespace sfvqd
