// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <doctest.h>

#include "pcgplan/cli/bench.h"
#include "pcgplan/cli/commands.h"
#include "pcgplan/cli/config.h"
#include "pcgplan/cli/structures.h"
#include "pcgplan/errors.h"
#include "pcgplan/pcg/graph_io.h"
#include "test_util.h"

namespace pcgplan {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Runs the CLI inside `dir` and returns its exit status.
int run_cli(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" PCGPLAN_CLI_PATH "' --log-level warn " +
                          args + " > cli.log 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json small_config(const std::string& mesh, const std::string& out) {
  return {{"format", "pcgplan-config"},
          {"version", 1},
          {"mesh", mesh},
          {"seed", 3},
          {"output_dir", out},
          {"sampling", {{"num_via_points", 60}, {"safety_distance", 1.0}}},
          {"geometry", {{"max_patch_area", 0.5}}}};
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

TEST_CASE("config parsing is strict") {
  const json base = {{"format", "pcgplan-config"}, {"version", 1}, {"mesh", "m.obj"}};
  PlanConfig c = config_from_json(base);
  CHECK(c.mesh == "m.obj");
  c.resolve();
  CHECK(c.resolution() == 1.0);
  CHECK(*c.pair_distance == 25.0);
  CHECK(*c.field_range == 50.0);
  CHECK(*c.pose_spacing == 2.0);
  CHECK(*c.verify_pose_spacing == 2.0);
  CHECK(c.search.coverage_target == 0.99);
  c.validate();

  json bad = base;
  bad["colour"] = 1;
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  bad = base;
  bad["sampling"] = {{"num_viapoints", 10}};
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  bad = base;
  bad.erase("version");
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  bad = base;
  bad["version"] = 2;
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  bad = base;
  bad["search"] = {{"tie_break", "random"}};
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  bad = base;
  bad["sampling"] = {{"num_via_points", "many"}};
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);

  PlanConfig d = config_from_json(base);
  d.search.coverage_target = 1.5;
  d.resolve();
  CHECK_THROWS_AS(d.validate(), ConfigError);
  d = config_from_json(base);
  d.method = "astar";
  d.resolve();
  CHECK_THROWS_AS(d.validate(), ConfigError);
}

TEST_CASE("config round trip") {
  json doc = {{"format", "pcgplan-config"},
              {"version", 1},
              {"mesh", "x.stl"},
              {"seed", 17},
              {"sensor", {{"fov_diag_deg", 80.0}, {"max_range", 30.0}}},
              {"sampling", {{"num_via_points", 123}, {"safety_distance", 3.0}}},
              {"search", {{"method", "greedy"}, {"coverage_target", 0.9}}},
              {"verify", {{"ray_cols", 40}, {"ray_rows", 30}}}};
  PlanConfig c = config_from_json(doc);
  c.resolve();
  CHECK(c.resolution() == 1.0);
  CHECK(*c.pair_distance == 15.0);
  const json out = config_to_json(c);
  const PlanConfig back = config_from_json(out);
  CHECK(back == c);
  CHECK(config_to_json(back) == out);
  CHECK(back.num_via_points == 123);
  CHECK(back.sensor.fov_diag_deg == 80.0);
}

// Every undirected edge shared by exactly two triangles, in opposite
// directions.
bool closed_and_oriented(const TriangleMesh& mesh) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];
  }
  for (const auto& [e, n] : directed) {
    if (n != 1) return false;
    auto it = directed.find({e.second, e.first});
    if (it == directed.end() || it->second != 1) return false;
  }
  return true;
}

long euler_oracle(const TriangleMesh& mesh) {
  std::set<std::pair<int, int>> edges;
  std::set<int> used;
  for (const auto& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
      used.insert(a);
    }
  }
  return static_cast<long>(used.size()) - static_cast<long>(edges.size()) +
         static_cast<long>(mesh.num_triangles());
}

TEST_CASE("generated structures") {
  const TriangleMesh box = make_structure(StructureKind::kBox);
  CHECK(box.num_triangles() == 12);
  CHECK(box.surface_area() == doctest::Approx(3200.0));
  CHECK(signed_volume(box) == doctest::Approx(12000.0));
  CHECK(closed_and_oriented(box));

  for (StructureKind k : {StructureKind::kBox, StructureKind::kLShape,
                          StructureKind::kTowerAnnex}) {
    const TriangleMesh m = make_structure(k);
    CAPTURE(structure_kind_name(k));
    CHECK(closed_and_oriented(m));
    CHECK(euler_oracle(m) == 2);
    CHECK(euler_characteristic(m) == 2);
    CHECK(signed_volume(m) > 0);
    CHECK(parse_structure_kind(structure_kind_name(k)) == k);
  }
  const TriangleMesh l = make_structure(StructureKind::kLShape);
  // 30x30 footprint minus an 18x18 notch, 20 high.
  CHECK(signed_volume(l) == doctest::Approx((900.0 - 324.0) * 20.0));

  // The cavity's inner shell faces inward, so the volume is the shell.
  const TriangleMesh cav = make_structure(StructureKind::kCavity);
  CHECK(closed_and_oriented(cav));
  CHECK(signed_volume(cav) == doctest::Approx(1000.0 - 64.0));

  CHECK_THROWS_AS(make_structure(StructureKind::kBox, {20, 0, 30}), ConfigError);
  CHECK_THROWS_AS(make_structure(StructureKind::kBox, {20, 30}), ConfigError);
  CHECK_THROWS_AS(make_structure(StructureKind::kLShape, {30, 30, 20, 40}), ConfigError);
  CHECK_THROWS_AS(parse_structure_kind("pyramid"), ConfigError);
}

TEST_CASE("plan and verify through the command line") {
  const fs::path dir = testing::temp_dir("cli_plan");
  REQUIRE(run_cli(dir, "gen-structure box --dims 4,4,4 -o box.obj") == kExitOk);
  write_text(dir / "cfg.json", small_config("box.obj", "out").dump());
  REQUIRE(run_cli(dir, "--config cfg.json plan") == kExitOk);
  for (const char* f : {"pcg.json", "path.json", "path.csv", "path.ply", "manifest.json"}) {
    CHECK(fs::exists(dir / "out" / f));
  }
  const json manifest = json::parse(slurp(dir / "out/manifest.json"));
  CHECK(manifest["status"] == "ok");
  CHECK(manifest["coverage_achieved"].get<double>() >= 0.99);
  CHECK(manifest["seed"] == 3);
  const json path = json::parse(slurp(dir / "out/path.json"));
  CHECK(path["method"] == "gns");
  CHECK(path["mesh_sha256"] == manifest["mesh_sha256"]);

  // The saved graph reloads and the path walks it.
  const PrimitiveCoverageGraph g = graph_from_json(read_json_file(dir / "out/pcg.json"));
  InspectionPath walk;
  walk.nodes.push_back(path["nodes"][0]["id"].get<int>());
  for (int e : path["edges"].get<std::vector<int>>()) append_edge(g, e, walk);
  CHECK(walk.length == doctest::Approx(path["length"].get<double>()));

  CHECK(run_cli(dir, "verify out/path.json") == kExitOk);
  const json report = json::parse(slurp(dir / "out/coverage_report.json"));
  CHECK(report["pass"] == true);
  CHECK(report["measured_coverage"].get<double>() >= 0.95);
  CHECK(fs::exists(dir / "out/occupancy.txt"));

  SUBCASE("tampered path falls short") {
    json cut = path;
    cut["nodes"] = json::array({path["nodes"][0]});
    cut["edges"] = json::array();
    write_text(dir / "out/cut.json", cut.dump());
    CHECK(run_cli(dir, "verify out/cut.json") == kExitCoverageShortfall);
  }
  SUBCASE("a different mesh is rejected") {
    REQUIRE(run_cli(dir, "gen-structure box --dims 4,4,5 -o other.obj") == kExitOk);
    CHECK(run_cli(dir, "verify out/path.json --mesh other.obj") == kExitConfigError);
  }
  SUBCASE("same seed gives identical output") {
    write_text(dir / "cfg2.json", small_config("box.obj", "again").dump());
    REQUIRE(run_cli(dir, "--config cfg2.json --threads 2 plan") == kExitOk);
    const json again = json::parse(slurp(dir / "again/path.json"));
    json a = path, b = again;
    CHECK(a.dump() == b.dump());
    CHECK(slurp(dir / "out/path.csv") == slurp(dir / "again/path.csv"));
  }
  SUBCASE("baseline methods") {
    CHECK(run_cli(dir, "--config cfg.json --out vpp plan --method vpp-tsp") == kExitOk);
    CHECK(json::parse(slurp(dir / "vpp/path.json"))["method"] == "vpp-tsp");
  }
}

TEST_CASE("command line errors") {
  const fs::path dir = testing::temp_dir("cli_errors");
  CHECK(run_cli(dir, "--config missing.json plan") == kExitIoError);
  write_text(dir / "bad.json", "{\"format\":\"pcgplan-config\",\"version\":1,\"nope\":1}");
  CHECK(run_cli(dir, "--config bad.json plan") == kExitConfigError);
  write_text(dir / "broken.json", "{not json");
  CHECK(run_cli(dir, "--config broken.json plan") == kExitConfigError);
  write_text(dir / "nomesh.json", small_config("absent.obj", "out").dump());
  CHECK(run_cli(dir, "--config nomesh.json plan") == kExitIoError);
  CHECK(run_cli(dir, "gen-structure box --dims 4,0,4 -o z.obj") == kExitConfigError);
  CHECK(run_cli(dir, "gen-structure box -o z.txt") == kExitConfigError);
  CHECK(run_cli(dir, "frobnicate") == kExitConfigError);
}

TEST_CASE("unreachable target on the cavity") {
  const fs::path dir = testing::temp_dir("cli_cavity");
  REQUIRE(run_cli(dir, "gen-structure cavity -o cav.obj") == kExitOk);
  write_text(dir / "cfg.json", small_config("cav.obj", "out").dump());
  CHECK(run_cli(dir, "--config cfg.json plan --coverage-target 1.0") == kExitUnreachable);
  const json manifest = json::parse(slurp(dir / "out/manifest.json"));
  CHECK(manifest["status"] == "unreachable");
  const double max = manifest["coverage_max"].get<double>();
  CHECK(max > 0.5);
  CHECK(max < 1.0);
  // Patches on the sealed inner shell can never be seen.
  const SurfacePatchSet patches = make_patches(make_structure(StructureKind::kCavity), 0.5);
  std::size_t inner = 0;
  for (std::size_t k = 0; k < patches.size(); ++k) {
    if (((patches[k].centroid - Vec3::Constant(5)).array().abs() <= 2.0 + 1e-9).all()) ++inner;
  }
  REQUIRE(inner > 0);
  CHECK(max <= 1.0 - static_cast<double>(inner) / patches.size() + 1e-9);
}

TEST_CASE("inspect") {
  const fs::path dir = testing::temp_dir("cli_inspect");
  REQUIRE(cmd_gen_structure(StructureKind::kBox, {2, 3, 4}, dir / "b.stl") == kExitOk);
  std::ostringstream out;
  CHECK(cmd_inspect(dir / "b.stl", out) == kExitOk);
  CHECK(out.str().find("triangles: 12") != std::string::npos);
  CHECK(cmd_inspect(dir / "none.obj", out) == kExitIoError);
}

TEST_CASE("bench rows and means") {
  const fs::path dir = testing::temp_dir("cli_bench");
  BenchSpec spec;
  spec.config = config_from_json(small_config("", "unused"));
  spec.cases = {{"small-box", StructureKind::kBox, {4, 4, 4}}};
  spec.trials = 2;
  REQUIRE(cmd_bench(spec, dir) == kExitOk);
  const std::string csv = slurp(dir / "bench.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);
  const json summary = read_json_file(dir / "summary.json");
  CHECK(summary["rows"] == 6);
  CHECK(summary["all_runs_ok"] == true);

  // Recompute the per-method means from the CSV.
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  const std::string header = line;
  CHECK(header.find("method") != std::string::npos);
  std::map<std::string, std::pair<double, int>> sums;
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() >= 5);
    sums[f[0]].first += std::stod(f[4]);
    sums[f[0]].second += 1;
  }
  for (const auto& [m, s] : sums) {
    CHECK(s.second == 2);
    CHECK(summary["structures"]["small-box"][m]["mean_length"].get<double>() ==
          doctest::Approx(s.first / 2).epsilon(1e-5));
  }
  const double g = summary["structures"]["small-box"]["gns"]["mean_length"];
  const double v = summary["structures"]["small-box"]["vpp-tsp"]["mean_length"];
  CHECK(summary["gns_reduction_pct"]["vpp-tsp"].get<double>() ==
        doctest::Approx(100 * (v - g) / v));
  CHECK(summary["reference_reduction_pct"]["vpp-tsp"] == 18.4);
  CHECK(summary["reference_reduction_pct"]["greedy"] == 29.2);
}

}  // namespace
}  // namespace pcgplan
