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

#include <gtest/gtest.h>

#include "sfvqd/cli.hpp"
#include "sfvqd/errors.hpp"

namespace sfvqd::cli {
namespace {

namespace fs = std::filesystem;
const fs::path kFixtures = SFVQD_FIXTURE_DIR;

fs::path scratch(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("sfvqd_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

TEST(Csv, RunRowsRoundTripExactly) {
  std::vector<RunRow> rows = {
      {"LiH", "bond", -0.5, "sfVQD/SSP", 6, 0, -7.873974905343249, 1.2345678901234567e-9, 0, 3, true, 12.5},
      {"BeH2", "sym-stretch", 0.1, "VQD/SP", 3, 2, -14.95474660, 2.0000000001, 1234567, 9, false, 0.001}};
  std::stringstream s;
  write_run_csv(s, rows);
  const std::string header = s.str().substr(0, s.str().find('\n'));
  std::string expected;
  for (std::size_t i = 0; i < kRunColumns.size(); ++i) expected += (i ? "," : "") + kRunColumns[i];
  EXPECT_EQ(header, expected);
  EXPECT_EQ(read_run_csv(s), rows);
}

TEST(Csv, ReferenceRowsRoundTripWithPlaceholder) {
  std::vector<ReferenceRow> rows = {{"LiH", "bond", 0.0, 1, 1, "0", 0, -7.87, true},
                                    {"LiH", "bond", 0.0, 3, -1, "2", 0, std::nan(""), false}};
  std::stringstream s;
  write_reference_csv(s, rows);
  const auto back = read_reference_csv(s);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], rows[0]);
  EXPECT_TRUE(std::isnan(back[1].energy));
  EXPECT_FALSE(back[1].complete);
}

TEST(Csv, MalformedInputRejected) {
  std::stringstream bad("molecule,mode\nLiH,bond\n");
  EXPECT_THROW(read_run_csv(bad), ParseError);
}

TEST(Manifest, ParsesEveryKey) {
  const nlohmann::json doc = {
      {"fixtures", {"lih_bond_l+0.000.json"}},
      {"method", {"sfVQD/SSP", "VQD/SP"}},
      {"layers", {3, 6}},
      {"restarts", 4},
      {"n_states", 2},
      {"target_spin", "1"},
      {"mode", "shot"},
      {"n_shot", 500},
      {"c_penalty", -0.5},
      {"optimizer", {{"name", "spsa"}, {"max_evaluations", 300}}},
      {"seed", 17},
      {"overlap_mode", "post-screen"},
      {"orthogonality_tolerance", 0.05},
      {"init_stddev", 0.1},
      {"output", "results"},
      {"emit", {"csv", "plot-data"}},
      {"jobs", 2}};
  const RunManifest m = manifest_from_json(doc, kFixtures);
  EXPECT_EQ(m.fixtures.at(0), kFixtures / "lih_bond_l+0.000.json");
  EXPECT_EQ(m.methods, (std::vector<Method>{Method::SfVqdSsp, Method::VqdSp}));
  EXPECT_EQ(m.layers, (std::vector<std::size_t>{3, 6}));
  EXPECT_EQ(m.config.restarts, 4u);
  EXPECT_EQ(m.config.n_states, 2u);
  EXPECT_EQ(m.target_spin, HalfInt(1));
  EXPECT_EQ(m.config.mode, CostMode::Shot);
  EXPECT_EQ(m.config.n_shot, 500u);
  EXPECT_EQ(m.config.c_penalty, -0.5);
  EXPECT_EQ(m.config.optimizer.name, "spsa");
  EXPECT_EQ(m.config.optimizer.max_evaluations, 300u);
  EXPECT_EQ(m.config.seed, 17u);
  EXPECT_EQ(m.config.overlap_mode, OverlapMode::PostScreen);
  EXPECT_TRUE(m.emit_csv);
  EXPECT_TRUE(m.emit_plot_data);
  EXPECT_EQ(m.jobs, 2);
}

TEST(Manifest, RejectsBadInput) {
  EXPECT_THROW(manifest_from_json({{"fixtures", {"a.json"}}, {"restart", 3}}), ValidationError);
  EXPECT_THROW(manifest_from_json({{"fixtures", {"a.json"}}, {"method", "VQE"}}), ValidationError);
  EXPECT_THROW(manifest_from_json({{"fixtures", {"a.json"}}, {"c_penalty", 1.5}}), ValidationError);
  EXPECT_THROW(manifest_from_json({{"fixtures", {"a.json"}}, {"optimizer", {{"nmae", "bfgs"}}}}), ValidationError);
  EXPECT_THROW(load_manifest("/nonexistent/manifest.json"), IoError);
}

TEST(HalfIntParsing, Forms) {
  EXPECT_EQ(parse_half_int("0"), HalfInt(0));
  EXPECT_EQ(parse_half_int("1/2"), HalfInt::from_twice(1));
  EXPECT_EQ(parse_half_int("1.5"), HalfInt::from_twice(3));
  EXPECT_EQ(parse_half_int("2"), HalfInt(2));
  EXPECT_THROW(parse_half_int("0.3"), InvalidArgument);
  EXPECT_THROW(parse_half_int("x"), InvalidArgument);
}

TEST(Probe, PassProbabilitiesOnBeH2) {
  const fs::path f = kFixtures / "beh2_sym-stretch_l+0.000.json";
  const ProbeReport quintet = cmd_probe(f, HalfInt(2), HalfInt(0));
  ASSERT_TRUE(quintet.found);
  EXPECT_EQ(quintet.n_anc, 3u);
  EXPECT_NEAR(quintet.pass_mass, 0.25, 1e-9);
  EXPECT_NEAR(quintet.distribution.at(2), 0.375, 1e-9);
  EXPECT_NEAR(quintet.distribution.at(-2), 0.375, 1e-9);
  EXPECT_TRUE(quintet.ok);
  const ProbeReport singlet = cmd_probe(f, HalfInt(0), HalfInt(0));
  EXPECT_NEAR(singlet.pass_mass, 1.0, 1e-10);
  const ProbeReport triplet = cmd_probe(f, HalfInt(1), HalfInt(0));
  EXPECT_NEAR(triplet.pass_mass, 0.0, 1e-10);
  EXPECT_FALSE(cmd_probe(f, HalfInt(3), HalfInt(0)).found);
}

TEST(Reference, InfeasibleSpinFlagged) {
  const auto rows = cmd_reference({kFixtures / "lih_bond_l+0.000.json"}, {HalfInt(0), HalfInt(2)}, 3);
  std::size_t singlets = 0;
  bool flagged = false;
  for (const auto& r : rows) {
    if (r.spin == "0") {
      ++singlets;
      EXPECT_TRUE(r.complete);
    }
    if (r.spin == "2") flagged = flagged || (!r.complete && std::isnan(r.energy));
  }
  EXPECT_EQ(singlets, 3u);
  EXPECT_TRUE(flagged);
  EXPECT_NEAR(rows.front().energy, -7.8739749053, 1e-9);
}

TEST(Validate, FixturesCleanAndMissingReported) {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(kFixtures)) paths.push_back(e.path());
  paths.emplace_back("/nonexistent.json");
  const auto reports = cmd_validate(paths);
  ASSERT_EQ(reports.size(), paths.size());
  for (std::size_t i = 0; i + 1 < reports.size(); ++i) EXPECT_TRUE(reports[i].ok()) << reports[i].path;
  EXPECT_FALSE(reports.back().ok());
}

RunManifest small_manifest(const fs::path& out) {
  RunManifest m;
  m.fixtures = {kFixtures / "lih_bond_l+0.000.json"};
  m.methods = {Method::SfVqdSsp, Method::VqdSp};
  m.layers = {1};
  m.config.restarts = 2;
  m.config.n_states = 2;
  m.config.seed = 5;
  m.config.optimizer.max_evaluations = 400;
  m.output = out;
  m.emit_plot_data = true;
  return m;
}

TEST(Run, DeterministicAndWritesOutputs) {
  const fs::path d1 = scratch("run1"), d2 = scratch("run2");
  RunManifest m = small_manifest(d1);
  const RunOutcome a = cmd_run(m);
  m.output = d2;
  m.jobs = 2;
  const RunOutcome b = cmd_run(m);
  ASSERT_EQ(a.rows.size(), 4u);
  ASSERT_EQ(b.rows.size(), 4u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].method, b.rows[i].method);
    EXPECT_EQ(a.rows[i].energy, b.rows[i].energy);
    EXPECT_EQ(a.rows[i].overlap_checks, b.rows[i].overlap_checks);
  }
  EXPECT_TRUE(fs::exists(d1 / "results.csv"));
  EXPECT_TRUE(fs::exists(d1 / "plot_data.csv"));
  std::ifstream in(d1 / "results.csv");
  const auto back = read_run_csv(in);
  ASSERT_EQ(back.size(), a.rows.size());
  EXPECT_EQ(back[0].energy, a.rows[0].energy);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST(Run, InvalidFixtureFailsBeforeAnyWork) {
  const fs::path d = scratch("bad");
  const fs::path bad = d / "bad.json";
  std::ofstream(bad) << "{\"schema_version\": 1";
  RunManifest m = small_manifest(d / "out");
  m.fixtures.push_back(bad);
  EXPECT_THROW(cmd_run(m), ParseError);
  EXPECT_FALSE(fs::exists(d / "out" / "results.csv"));
  fs::remove_all(d);
}

TEST(Run, RejectsInvalidPenaltyAsValidationFailure) {
  RunManifest m = small_manifest(scratch("pen"));
  m.config.c_penalty = 1.0;
  EXPECT_THROW(cmd_run(m), ValidationError);
}

}  // namespace
}  // namespace sfvqd::cli
