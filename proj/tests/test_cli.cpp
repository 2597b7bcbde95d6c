// Copyright 2026 The rhulloid Authors.
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support/oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path dir = fs::temp_directory_path() / "rhulloid_cli_tests" / (std::string(info->test_suite_name()) + "_" + info->name());
  fs::create_directories(dir);
  return dir;
}

Run cli(const std::string& args, const std::string& env = "") {
  const fs::path dir = scratch();
  const fs::path out = dir / "stdout", err = dir / "stderr";
  const std::string cmd = env + " " + RHULLOID_CLI_PATH + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string sample(const std::string& name) { return std::string(RHULLOID_SAMPLES_DIR) + "/" + name; }

std::string write_input(const json& j, const std::string& name = "input.json") {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

json tetra_json(const std::array<ref::P3, 4>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back({p[0], p[1], p[2]});
  return a;
}

}  // namespace

TEST(CliAnalyze, RegularTetrahedronRatio) {
  const auto r = cli("analyze " + sample("regular_tetrahedron.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_NEAR(j["critical"]["r_star_over_r_v"].get<double>(), 1.5, 1e-9);
  EXPECT_TRUE(j["critical"]["validated"].get<bool>());
  EXPECT_EQ(j["version"], "0.1.0");
  EXPECT_EQ(j["seed"], 0);
  EXPECT_TRUE(j.contains("tolerances"));
  ASSERT_EQ(j["classification"].size(), 3u);
  EXPECT_EQ(j["classification"][0]["shape"], "vertices_only");
  EXPECT_EQ(j["classification"][1]["shape"], "vertices_plus_point");
  EXPECT_EQ(j["classification"][2]["shape"], "full");
  EXPECT_EQ(j["facets"].size(), 4u);
}

TEST(CliAnalyze, TrirectangularCollapsesWithoutWellCentering) {
  const auto r = cli("analyze " + sample("trirectangular.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_FALSE(j["well_centered"].get<bool>());
  EXPECT_TRUE(j["critical"]["collapsed"].get<bool>());
}

TEST(CliAnalyze, NearFlatIsDegenerate) {
  const auto r = cli("analyze " + sample("near_flat.json"));
  EXPECT_EQ(r.code, 3);
  const auto e = json::parse(r.err);
  EXPECT_EQ(e["error"], "DegenerateInput");
  EXPECT_TRUE(r.out.empty());
}

TEST(CliAnalyze, SeedIsEchoedAndFlagsOverrideFile) {
  const auto r = cli("analyze " + sample("trirectangular.json") + " --seed 17 --rho 2");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["seed"], 17);
  ASSERT_EQ(j["classification"].size(), 1u);
  EXPECT_EQ(j["classification"][0]["rho"], 2.0);
}

TEST(CliAnalyze, OutputIsByteIdenticalAcrossRunsAndThreadCounts) {
  const auto a = cli("analyze " + sample("trirectangular.json") + " --seed 3", "RHULLOID_THREADS=1");
  const auto b = cli("analyze " + sample("trirectangular.json") + " --seed 3", "RHULLOID_THREADS=4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = cli("four-crossing " + sample("regular_tetrahedron.json"), "RHULLOID_THREADS=1");
  const auto d = cli("four-crossing " + sample("regular_tetrahedron.json"), "RHULLOID_THREADS=3");
  EXPECT_EQ(c.out, d.out);
}

TEST(CliSchema, Errors) {
  EXPECT_EQ(cli("analyze " + write_input(json{{"vertices", {{0, 0}, {1, 0}}}})).code, 2);
  EXPECT_EQ(cli("analyze " + write_input(json{{"vertices", {{0, 0}, {1, 0}, {0, 1, 2}}}})).code, 2);
  EXPECT_EQ(cli("analyze " + write_input(json{{"vertices", {{0, 0}, {1, 0}, {0, 1}}}, {"colour", 1}})).code, 2);
  EXPECT_EQ(cli("analyze " + write_input(json{{"rho", 1.0}})).code, 2);
  {
    const fs::path p = scratch() / "broken.json";
    std::ofstream(p) << "{\"vertices\": [[0,0],";
    const auto r = cli("analyze " + p.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(json::parse(r.err)["error"], "InvalidArgument");
  }
  EXPECT_EQ(cli("analyze /nonexistent/file.json").code, 2);
  EXPECT_EQ(cli("analyze " + sample("trirectangular.json") + " --bogus").code, 2);
  EXPECT_EQ(cli("mesh " + sample("trirectangular.json") + " --format png").code, 2);
  EXPECT_EQ(cli("analyze " + sample("trirectangular.json") + " --rho -1").code, 2);
}

TEST(CliFourCrossing, RegularHasSevenRecords) {
  const auto r = cli("four-crossing " + sample("regular_tetrahedron.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["count"], 7);
  EXPECT_EQ(j["crossings"].size(), 7u);
  EXPECT_EQ(j["interior_count"], 1);
  EXPECT_EQ(j["diagnostics"]["r_max"], 8.0);
}

TEST(CliFourCrossing, ApexPyramidRejectionListed) {
  const auto r = cli("four-crossing " + sample("apex_pyramid.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  bool found = false;
  for (const auto& rc : j["diagnostics"]["rejected"]) {
    const auto p = rc["point"];
    const bool apex = std::abs(p[0].get<double>()) < 1e-9 && std::abs(p[1].get<double>()) < 1e-9 &&
                      std::abs(p[2].get<double>() - std::sqrt(0.2)) < 1e-9;
    if (apex && rc["reason"] == "on_circumsphere" && std::abs(rc["radius"].get<double>() - std::sqrt(1.25)) < 1e-9) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(CliFourCrossing, InteriorRecordMatchesAnalyze) {
  std::mt19937_64 rng(60);
  int matched = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const std::string in = write_input(json{{"vertices", tetra_json(ref::random_tetrahedron(rng))}}, "t" + std::to_string(trial) + ".json");
    const auto fc = cli("four-crossing " + in);
    const auto an = cli("analyze " + in);
    ASSERT_EQ(fc.code, 0) << fc.err;
    ASSERT_EQ(an.code, 0) << an.err;
    const auto jf = fc.report(), ja = an.report();
    for (const auto& rec : jf["crossings"]) {
      if (!rec["interior"].get<bool>()) continue;
      ++matched;
      const double rs = ja["critical"]["r_star"].get<double>();
      EXPECT_NEAR(rec["radius"].get<double>(), rs, 1e-9 * rs);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(rec["point"][k].get<double>(), ja["critical"]["o_star"][k].get<double>(), 1e-9 * rs);
    }
  }
  EXPECT_GT(matched, 0);
}

TEST(CliFourCrossing, PlanarInputIsRejected) {
  EXPECT_EQ(cli("four-crossing " + sample("right_triangle.json")).code, 2);
}

TEST(CliMesh, RegularPatchesAreCongruent) {
  const fs::path obj = scratch() / "mesh.obj";
  const auto r = cli("mesh " + sample("regular_tetrahedron.json") + " --rho 3 --output " + obj.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  ASSERT_EQ(j["patches"].size(), 4u);
  for (const auto& p : j["patches"]) EXPECT_EQ(p["vertices"], j["patches"][0]["vertices"]);
  const std::string text = slurp(obj);
  std::size_t objects = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) objects += line.rfind("o ", 0) == 0 ? 1 : 0;
  EXPECT_EQ(objects, 4u);
}

TEST(CliMesh, ObjToStdoutAndResolution) {
  const auto r = cli("mesh " + sample("regular_tetrahedron.json") + " --rho 3 --resolution 16x8");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# R-hulloid boundary", 0), 0u);
  std::size_t v = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) v += line.rfind("v ", 0) == 0 ? 1 : 0;
  EXPECT_LE(v, 4u * (16 * 8 + 1));
}

TEST(CliMesh, EquilateralSvgArcsAreCongruent) {
  const double h = std::sqrt(3.0) / 2.0;
  const std::string in = write_input(json{{"vertices", {{0, 0}, {1, 0}, {0.5, h}}}, {"rho", 2.0 / std::sqrt(3.0)}});
  const auto r = cli("mesh " + in + " --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  ASSERT_EQ(j["arcs"].size(), 3u);
  auto chord = [](const json& a) {
    return std::hypot(a["end"][0].get<double>() - a["start"][0].get<double>(), a["end"][1].get<double>() - a["start"][1].get<double>());
  };
  for (const auto& a : j["arcs"]) EXPECT_NEAR(chord(a), chord(j["arcs"][0]), 1e-12);
  const auto svg = cli("mesh " + in);
  EXPECT_EQ(svg.code, 0);
  EXPECT_NE(svg.out.find("<svg"), std::string::npos);
}

TEST(CliMesh, RightTriangleArcEndpointsIncludeTheRightAngle) {
  const auto r = cli("mesh " + sample("right_triangle.json") + " --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json arcs = r.report()["arcs"];
  bool found = false;
  for (const auto& a : arcs)
    for (const char* key : {"start", "end"})
      found = found || std::hypot(a[key][0].get<double>(), a[key][1].get<double>()) < 1e-9;
  EXPECT_TRUE(found);
}

TEST(CliMesh, BelowCriticalRadiusFails) {
  EXPECT_EQ(cli("mesh " + sample("regular_tetrahedron.json") + " --rho 1.4").code, 2);
  EXPECT_EQ(cli("mesh " + sample("right_triangle.json") + " --rho 0.5").code, 2);
  EXPECT_EQ(cli("mesh " + sample("regular_tetrahedron.json")).code, 2);
}

TEST(CliMember, FormulaAndOracleReported) {
  const auto r = cli("member " + sample("member_points.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = r.report()["results"];
  ASSERT_EQ(res.size(), 4u);
  EXPECT_TRUE(res[0]["member"].get<bool>());
  EXPECT_TRUE(res[3]["member"].get<bool>());
  for (const auto& e : res)
    if (e["boundary_distance"].get<double>() > 1e-4) {
      EXPECT_EQ(e["member"], e["oracle_member"]);
    }
}

TEST(CliOracleCheck, RandomTetrahedronAgrees) {
  std::mt19937_64 rng(61);
  const std::string in = write_input(json{{"vertices", tetra_json(ref::random_tetrahedron(rng))}});
  const auto r = cli("oracle-check " + in + " --samples 200 --seed 5");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["seed"], 5);
  for (const auto& e : j["results"]) {
    EXPECT_GE(e["agreement_off_boundary"].get<double>(), 0.99);
    for (const auto& d : e["disagreements"]) EXPECT_TRUE(d["in_band"].get<bool>());
  }
}

TEST(CliOracleCheck, SmallRadiusEverythingIsOutside) {
  const auto r = cli("oracle-check " + sample("trirectangular.json") + " --rho 0.8 --samples 100");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto e = r.report()["results"][0];
  EXPECT_EQ(e["agreement"], 1.0);
  EXPECT_TRUE(e["disagreements"].empty());
  const auto m = cli("member " + write_input(json{{"vertices", {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
                                                   {"rho", 0.8},
                                                   {"points", {{0.1, 0.1, 0.1}, {0.3, 0.2, 0.1}, {0.5, 0.5, 0}}}}));
  const json points = m.report()["results"];
  ASSERT_EQ(points.size(), 3u);
  for (const auto& p : points) {
    EXPECT_FALSE(p["member"].get<bool>());
    EXPECT_FALSE(p["oracle_member"].get<bool>());
  }
}

TEST(CliOracleCheck, ZeroSamplesIsAnEmptyReport) {
  const auto r = cli("oracle-check " + sample("trirectangular.json") + " --samples 0");
  ASSERT_EQ(r.code, 0);
  const auto e = r.report()["results"][0];
  EXPECT_EQ(e["evaluated"], 0);
  EXPECT_TRUE(e["agreement"].is_null());
}

TEST(CliOracleCheck, StdinInput) {
  const auto r = cli("oracle-check - --samples 4 < " + sample("trirectangular.json"));
  EXPECT_EQ(r.code, 0) << r.err;
}
