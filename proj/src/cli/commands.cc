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

#include "pcgplan/cli/commands.h"

#include <chrono>
#include <fstream>

#include <spdlog/fmt/fmt.h>
#include <spdlog/spdlog.h>

#include "pcgplan/errors.h"
#include "pcgplan/io/export.h"
#include "pcgplan/pcg/graph_io.h"
#include "pcgplan/search/baselines.h"
#include "pcgplan/search/gns.h"
#include "pcgplan/verify/verify.h"

namespace pcgplan {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

template <typename Fn>
int guarded(const char* command, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitConfigError;
  } catch (const EmptyRegionError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitConfigError;
  } catch (const MeshError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitIoError;
  } catch (const IoError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitIoError;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitIoError;
  } catch (const json::exception& e) {
    spdlog::error("{}: malformed input: {}", command, e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitIoError;
  }
}

}  // namespace

Scene::Scene(TriangleMesh m, double max_patch_area)
    : mesh(std::move(m)),
      patches(make_patches(mesh, max_patch_area)),
      caster(std::make_unique<BvhRayCaster>(mesh)) {}

PlanningGraph build_planning_graph(const Scene& scene, const PlanConfig& config) {
  PlanningGraph out;
  Stopwatch clock;
  const SamplingParams sp = config.sampling_params();
  out.grids = build_sampling_grids(scene.mesh, sp, config.resolution(),
                                   config.voxelize_options());
  out.timings["voxels"] = clock.lap();
  out.via_points = sample_via_points(out.grids.region, scene.patches, sp);
  out.timings["via_points"] = clock.lap();
  out.primitives = sample_primitives(out.via_points, out.grids.safety, sp);
  out.timings["primitives"] = clock.lap();
  const VisibilityModel vis(scene.patches, *scene.caster, config.sensor,
                            default_occlusion_tolerance(config.resolution()));
  out.graph = build_pcg(out.via_points, out.primitives, vis);
  std::vector<double> areas;
  areas.reserve(scene.patches.size());
  for (const SurfacePatch& p : scene.patches.patches()) areas.push_back(p.area);
  out.graph.set_patch_areas(std::move(areas));
  out.timings["graph"] = clock.lap();
  spdlog::info("graph: {} patches, {} nodes, {} edges", scene.patches.size(),
               out.graph.nodes().size(), out.graph.edges().size());
  return out;
}

InspectionPath run_search(const PrimitiveCoverageGraph& graph, const std::string& method,
                          const SearchParams& params) {
  if (method == "gns") return gns(graph, params);
  if (method == "greedy") return baseline_greedy_viewpoints(graph, params);
  if (method == "vpp-tsp") return baseline_vpp_tsp(graph, params);
  throw ConfigError("unknown method '" + method + "'");
}

int cmd_plan(const PlanConfig& input) {
  return guarded("plan", [&]() {
    PlanConfig config = input;
    config.resolve();
    config.validate();
    if (config.mesh.empty()) throw ConfigError("no mesh given");
    Stopwatch total;
    const std::string mesh_hash = sha256_file(config.mesh);
    Scene scene(load_mesh(config.mesh, MeshFormat::kAuto, config.flip_normals),
                config.max_patch_area);
    const double t_load = total.lap();
    PlanningGraph pg = build_planning_graph(scene, config);

    fs::create_directories(config.output_dir);
    const fs::path out = config.output_dir;
    json meta = {{"manifest", "manifest.json"},
                 {"mesh_sha256", mesh_hash},
                 {"params", config_to_json(config)}};
    write_json_file(graph_to_json(pg.graph, meta), out / "pcg.json");
    if (config.export_debug) {
      write_via_points_jsonl(pg.via_points, out / "via_points.jsonl");
      write_primitives_jsonl(pg.primitives, out / "primitives.jsonl");
      std::ofstream region(out / "region_voxels.txt");
      write_voxel_list(pg.grids.region, region);
    }

    const double delta_max = max_coverage(pg.graph);
    json manifest = {{"format", "pcgplan-manifest"},
                     {"version", 1},
                     {"config", config_to_json(config)},
                     {"seed", config.seed},
                     {"mesh", config.mesh.string()},
                     {"mesh_sha256", mesh_hash},
                     {"method", config.method},
                     {"coverage_target", config.search.coverage_target},
                     {"coverage_max", delta_max},
                     {"stats",
                      {{"triangles", scene.mesh.num_triangles()},
                       {"patches", scene.patches.size()},
                       {"region_voxels", pg.grids.region.occupied_count()},
                       {"via_points", pg.via_points.size()},
                       {"primitives", pg.primitives.size()},
                       {"graph_nodes", pg.graph.nodes().size()},
                       {"graph_edges", pg.graph.edges().size()}}}};
    json artifacts = {{"graph", "pcg.json"}};

    int code = kExitOk;
    Stopwatch search_clock;
    try {
      const InspectionPath path = run_search(pg.graph, config.method, config.search);
      pg.timings["search"] = search_clock.lap();
      const std::vector<Pose> poses =
          sample_path_poses(pg.graph, path, *config.pose_spacing);
      PathMeta pm{"manifest.json", mesh_hash, config.search.coverage_target};
      write_json_file(path_to_json(pg.graph, path, pm), out / "path.json");
      write_path_csv(poses, out / "path.csv");
      write_path_ply(poses, out / "path.ply");
      artifacts["path"] = "path.json";
      artifacts["waypoints_csv"] = "path.csv";
      artifacts["path_ply"] = "path.ply";
      manifest["status"] = "ok";
      manifest["coverage_achieved"] = path.coverage;
      manifest["path_length"] = path.length;
      manifest["path_edges"] = path.edges.size();
      manifest["waypoints"] = poses.size();
      spdlog::info("{}: length {:.2f} m, coverage {:.4f} (max {:.4f})", config.method,
                   path.length, path.coverage, delta_max);
    } catch (const UnreachableCoverageError& e) {
      pg.timings["search"] = search_clock.lap();
      spdlog::error("plan: {}", e.what());
      manifest["status"] = "unreachable";
      manifest["coverage_max"] = e.max_coverage();
      code = kExitUnreachable;
    }
    if (config.export_debug) {
      artifacts["via_points"] = "via_points.jsonl";
      artifacts["primitives"] = "primitives.jsonl";
      artifacts["region_voxels"] = "region_voxels.txt";
    }
    manifest["artifacts"] = artifacts;
    json timings = {{"load", t_load}};
    for (const auto& [stage, s] : pg.timings) timings[stage] = s;
    manifest["timings_s"] = timings;
    write_json_file(manifest, out / "manifest.json");
    return code;
  });
}

int cmd_verify(const fs::path& path_json, const std::optional<fs::path>& mesh_override,
               const std::optional<PlanConfig>& config_override,
               const std::optional<fs::path>& out_dir) {
  return guarded("verify", [&]() {
    const PathDocument doc = path_from_json(read_json_file(path_json));
    PlanConfig config;
    if (config_override) {
      config = *config_override;
    } else {
      const fs::path manifest_path = path_json.parent_path() / doc.manifest;
      config = config_from_json(read_json_file(manifest_path).at("config"));
    }
    config.resolve();
    config.validate();
    const fs::path mesh_path = mesh_override ? *mesh_override : config.mesh;
    const std::string hash = sha256_file(mesh_path);
    if (hash != doc.mesh_sha256) {
      spdlog::error("verify: mesh {} does not match the planned mesh (sha256 {} vs {})",
                    mesh_path.string(), hash, doc.mesh_sha256);
      return kExitConfigError;
    }
    Scene scene(load_mesh(mesh_path, MeshFormat::kAuto, config.flip_normals),
                config.max_patch_area);
    if (scene.patches.size() != doc.patch_count) {
      spdlog::error("verify: patch count {} differs from planned {}", scene.patches.size(),
                    doc.patch_count);
      return kExitConfigError;
    }
    VerifyOptions options = config.verify_options();
    CoverageReport report = verify_path(doc.nodes, scene.mesh, *scene.caster,
                                        scene.patches, config.sensor, options);
    report.planned = doc.coverage;
    const bool pass = report.measured >= report.planned - config.tolerance;

    const fs::path out = out_dir ? *out_dir : path_json.parent_path();
    fs::create_directories(out);
    json rj = report_to_json(report);
    rj["path"] = path_json.filename().string();
    rj["tolerance"] = config.tolerance;
    rj["pass"] = pass;
    write_json_file(rj, out / "coverage_report.json");
    std::ofstream occ(out / "occupancy.txt");
    if (!occ) throw IoError("cannot write occupancy.txt");
    report.occupancy.write(occ);
    spdlog::info("verify: measured {:.4f}, planned {:.4f}, {} poses -> {}", report.measured,
                 report.planned, report.pose_count, pass ? "pass" : "fail");
    return pass ? kExitOk : kExitCoverageShortfall;
  });
}

int cmd_gen_structure(StructureKind kind, const std::vector<double>& dims,
                      const fs::path& out) {
  return guarded("gen-structure", [&]() {
    const TriangleMesh mesh = make_structure(kind, dims);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    const std::string ext = out.extension().string();
    if (ext == ".stl") {
      write_stl_binary(mesh, out);
    } else if (ext == ".obj") {
      write_obj(mesh, out);
    } else {
      throw ConfigError("output must end in .obj or .stl");
    }
    spdlog::info("{}: {} triangles, area {:.3f} m^2 -> {}", structure_kind_name(kind),
                 mesh.num_triangles(), mesh.surface_area(), out.string());
    return kExitOk;
  });
}

int cmd_inspect(const fs::path& file, std::ostream& out) {
  return guarded("inspect", [&]() {
    if (file.extension() == ".json") {
      const json doc = read_json_file(file);
      const PrimitiveCoverageGraph g = graph_from_json(doc);
      const std::vector<int> comp = connected_components(g);
      std::map<int, int> sizes;
      for (int c : comp) ++sizes[c];
      double total = 0.0;
      for (const PcgEdge& e : g.edges()) total += e.length;
      out << fmt::format("graph {}\n  patches: {}\n  nodes: {}\n  edges: {}\n", file.string(),
                         g.patch_count(), g.nodes().size(), g.edges().size());
      out << fmt::format("  components: {}\n  mean edge length: {:.3f}\n  max coverage: {:.4f}\n",
                         sizes.size(), g.edges().empty() ? 0.0 : total / g.edges().size(),
                         max_coverage(g));
      return kExitOk;
    }
    const TriangleMesh mesh = load_mesh(file);
    const Aabb box = mesh.bounds();
    out << fmt::format("mesh {}\n  vertices: {}\n  triangles: {}\n  dropped degenerate: {}\n",
                       file.string(), mesh.vertices().size(), mesh.num_triangles(),
                       mesh.dropped_degenerate());
    out << fmt::format("  surface area: {:.6f}\n  bounds: [{:.3f} {:.3f} {:.3f}] - [{:.3f} {:.3f} {:.3f}]\n",
                       mesh.surface_area(), box.min.x(), box.min.y(), box.min.z(),
                       box.max.x(), box.max.y(), box.max.z());
    out << fmt::format("  closed: {}\n  euler characteristic: {}\n",
                       is_closed(mesh) ? "yes" : "no", euler_characteristic(mesh));
    return kExitOk;
  });
}

}  // namespace pcgplan
