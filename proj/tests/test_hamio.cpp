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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <algorithm>

#include <gtest/gtest.h>

#include "sfvqd/ansatz.hpp"
#include "sfvqd/errors.hpp"
#include "sfvqd/hamio.hpp"
#include "sfvqd/oracle.hpp"

namespace sfvqd {
namespace {

namespace fs = std::filesystem;
const std::string kFixtures = SFVQD_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / ("sfvqd_hamio_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(d);
  return d;
}

TEST(Hamio, LoadsLiHAndBeH2) {
  const HamiltonianRecord lih = load(kFixtures + "/lih_bond_l+0.000.json");
  EXPECT_EQ(lih.n_spatial, 3u);
  EXPECT_EQ(lih.n_alpha, 1);
  EXPECT_EQ(lih.n_beta, 1);
  EXPECT_EQ(lih.molecule, "LiH");
  EXPECT_EQ(lih.geometry.mode, "bond");
  EXPECT_DOUBLE_EQ(lih.geometry.r0_angstrom, 1.36);
  const HamiltonianRecord beh2 = load(kFixtures + "/beh2_sym-stretch_l+0.000.json");
  EXPECT_EQ(beh2.n_spatial, 4u);
  EXPECT_EQ(beh2.n_alpha, 2);
  EXPECT_EQ(beh2.n_beta, 2);
  EXPECT_DOUBLE_EQ(beh2.geometry.r0_angstrom, 1.334);
  EXPECT_TRUE(beh2.hamiltonian().is_canonical());
}

TEST(Hamio, FixtureNamesEncodeKey) {
  EXPECT_EQ(fixture_filename("LiH", "bond", 0.0), "lih_bond_l+0.000.json");
  EXPECT_EQ(fixture_filename("LiH", "bond", -0.5), "lih_bond_l-0.500.json");
  EXPECT_EQ(fixture_filename("BeH2", "antisym-stretch", 1.0), "beh2_antisym-stretch_l+1.000.json");
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(kFixtures)) {
    const HamiltonianRecord r = load(e.path());
    EXPECT_EQ(e.path().filename().string(), fixture_filename(r.molecule, r.geometry.mode, r.geometry.lambda));
    ++n;
  }
  EXPECT_EQ(n, 10u);
}

TEST(Hamio, RoundTripIsExactAndDeterministic) {
  const fs::path dir = temp_dir();
  for (const auto& e : fs::directory_iterator(kFixtures)) {
    const HamiltonianRecord r = load(e.path());
    const fs::path out = dir / e.path().filename();
    save(r, out);
    const HamiltonianRecord back = load(out);
    EXPECT_TRUE(back == r) << e.path();
    EXPECT_EQ(dump_record(back), dump_record(r));
    EXPECT_EQ(slurp(out), dump_record(r));
    // Field order and number formatting match the committed files exactly.
    EXPECT_EQ(slurp(e.path()), dump_record(r)) << e.path();
  }
  fs::remove_all(dir);
}

TEST(Hamio, CanonicalOrderingIndependentOfInputOrder) {
  HamiltonianRecord r = load(kFixtures + "/lih_bond_l+0.000.json");
  HamiltonianRecord shuffled = r;
  std::reverse(shuffled.terms.begin(), shuffled.terms.end());
  EXPECT_EQ(dump_record(shuffled), dump_record(r));
}

TEST(Hamio, StrictAndLenientUnknownFields) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(slurp(kFixtures + "/lih_bond_l+0.000.json"));
  doc["provenance"] = "hand edited";
  EXPECT_THROW(parse_record(doc.dump(), LoadMode::Strict), ParseError);
  const HamiltonianRecord r = parse_record(doc.dump(), LoadMode::Lenient);
  EXPECT_EQ(r.extra.at("provenance"), "hand edited");
  EXPECT_NE(dump_record(r).find("provenance"), std::string::npos);
  EXPECT_TRUE(parse_record(dump_record(r), LoadMode::Lenient) == r);
}

TEST(Hamio, SchemaErrorsCarryFieldPath) {
  const std::string text = slurp(kFixtures + "/lih_bond_l+0.000.json");
  EXPECT_THROW(parse_record(text.substr(0, text.size() / 2)), ParseError);
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(text);
  doc["terms"][3]["coefficient"] = "oops";
  try {
    parse_record(doc.dump());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("terms[3].coefficient"), std::string::npos);
  }
  doc = nlohmann::ordered_json::parse(text);
  doc["terms"][0]["pauli"] = "IIII";
  EXPECT_THROW(parse_record(doc.dump()), ValidationError);
  doc = nlohmann::ordered_json::parse(text);
  doc["schema_version"] = 2;
  EXPECT_THROW(parse_record(doc.dump()), ParseError);
  doc = nlohmann::ordered_json::parse(text);
  doc.erase("geometry");
  EXPECT_THROW(parse_record(doc.dump()), ParseError);
  doc = nlohmann::ordered_json::parse(text);
  doc["n_alpha"] = 5;
  EXPECT_THROW(parse_record(doc.dump()), ValidationError);
  EXPECT_THROW(load("/nonexistent/fixture.json"), IoError);
}

TEST(Hamio, SaveToUnwritablePathFails) {
  const HamiltonianRecord r = load(kFixtures + "/lih_bond_l+0.000.json");
  EXPECT_THROW(save(r, "/nonexistent/dir/out.json"), IoError);
}

TEST(Hamio, ShippedFixturesAreClean) {
  for (const auto& e : fs::directory_iterator(kFixtures)) {
    const PhysicsReport rep = validate_physics(load(e.path()));
    EXPECT_TRUE(rep.clean()) << e.path();
    EXPECT_FALSE(rep.suspicious);
  }
}

TEST(Hamio, CorruptedFixtureFlagsSz) {
  HamiltonianRecord r = load(kFixtures + "/lih_bond_l+0.000.json");
  r.terms.push_back({0.1, "XIIIII"});
  const PhysicsReport rep = validate_physics(r);
  EXPECT_FALSE(rep.clean());
  EXPECT_GT(rep.sz_commutator, 1e-8);
  bool found = false;
  for (const auto& v : rep.violations) found = found || v.find("S_z") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Hamio, EmptyTermListIsSuspicious) {
  HamiltonianRecord r = load(kFixtures + "/lih_bond_l+0.000.json");
  r.terms.clear();
  const PhysicsReport rep = validate_physics(r);
  EXPECT_TRUE(rep.clean());
  EXPECT_TRUE(rep.suspicious);
}

TEST(Hamio, SymAndAntisymCoincideAtZero) {
  const HamiltonianRecord a = load(kFixtures + "/beh2_sym-stretch_l+0.000.json");
  const HamiltonianRecord b = load(kFixtures + "/beh2_antisym-stretch_l+0.000.json");
  ASSERT_EQ(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    EXPECT_EQ(a.terms[i].word, b.terms[i].word);
    EXPECT_EQ(a.terms[i].coefficient, b.terms[i].coefficient);
  }
}

TEST(Hamio, ReferenceOccupationMatchesDeclaredSector) {
  for (const auto& e : fs::directory_iterator(kFixtures)) {
    const HamiltonianRecord r = load(e.path());
    const StateVector ref = reference_state(r.n_spatial, r.sector());
    const auto num = build_number_operators(r.n_spatial);
    EXPECT_NEAR(expectation(ref, num.alpha), r.n_alpha, 1e-15);
    EXPECT_NEAR(expectation(ref, num.beta), r.n_beta, 1e-15);
  }
}

}  // namespace
}  // namespace sfvqd
