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

#include "pcgplan/cli/config.h"

#include <set>

#include "pcgplan/errors.h"
#include "pcgplan/pcg/graph_io.h"

namespace pcgplan {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown config key '" + where + (where.empty() ? "" : ".") +
                        key + "'");
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

template <typename T>
void read(const json& obj, const char* key, std::optional<T>& out) {
  if (obj.contains(key) && !obj.at(key).is_null()) out = obj.at(key).get<T>();
}

}  // namespace

void PlanConfig::resolve() {
  if (!voxel_resolution) voxel_resolution = std::min(safety_distance, 2.0) / 2.0;
  if (!pair_distance) pair_distance = sensor.max_range / 2.0;
  if (!field_range) field_range = sensor.max_range;
  if (!pose_spacing) pose_spacing = 2.0 * *voxel_resolution;
  if (!verify_pose_spacing) verify_pose_spacing = *pose_spacing;
}

void PlanConfig::validate() const {
  sensor.validate();
  sampling_params().validate();
  search.validate();
  if (!(resolution() > 0.0)) throw ConfigError("geometry.voxel_resolution must be positive");
  if (!(max_patch_area > 0.0)) throw ConfigError("geometry.max_patch_area must be positive");
  if (max_voxels == 0) throw ConfigError("geometry.max_voxels must be positive");
  if (verify_cols < 1 || verify_rows < 1) throw ConfigError("verify ray grid must be >= 1x1");
  if (!(*verify_pose_spacing > 0.0)) throw ConfigError("verify.pose_spacing must be positive");
  if (!(tolerance >= 0.0 && tolerance <= 1.0)) throw ConfigError("verify.tolerance must lie in [0, 1]");
  if (method != "gns" && method != "greedy" && method != "vpp-tsp") {
    throw ConfigError("search.method must be gns, greedy or vpp-tsp");
  }
}

SamplingParams PlanConfig::sampling_params() const {
  SamplingParams p;
  p.num_via_points = num_via_points;
  p.pair_distance = *pair_distance;
  p.field_range = *field_range;
  p.max_range = sensor.max_range;
  p.safety_distance = safety_distance;
  p.pose_spacing = *pose_spacing;
  p.seed = seed;
  return p;
}

VoxelizeOptions PlanConfig::voxelize_options() const {
  VoxelizeOptions o;
  o.fill_interior = fill_interior;
  o.max_voxels = max_voxels;
  return o;
}

VerifyOptions PlanConfig::verify_options() const {
  VerifyOptions o;
  o.grid = {verify_cols, verify_rows};
  o.pose_spacing = *verify_pose_spacing;
  o.occupancy_resolution = resolution();
  return o;
}

PlanConfig config_from_json(const json& doc) {
  PlanConfig c;
  try {
    reject_unknown(doc, {"format", "version", "mesh", "flip_normals", "seed", "output_dir",
                         "sensor", "sampling", "geometry", "search", "verify", "debug"},
                   "");
    if (doc.contains("format") && doc["format"].get<std::string>() != kConfigFormat) {
      throw ConfigError("config format must be '" + std::string(kConfigFormat) + "'");
    }
    if (!doc.contains("version")) throw ConfigError("config is missing 'version'");
    if (doc["version"].get<int>() != kConfigVersion) {
      throw ConfigError("unsupported config version " + doc["version"].dump());
    }
    if (doc.contains("mesh")) c.mesh = doc["mesh"].get<std::string>();
    if (doc.contains("output_dir")) c.output_dir = doc["output_dir"].get<std::string>();
    read(doc, "flip_normals", c.flip_normals);
    read(doc, "seed", c.seed);
    read(doc, "debug", c.export_debug);

    if (doc.contains("sensor")) {
      const json& s = doc["sensor"];
      reject_unknown(s, {"fov_diag_deg", "image_width", "image_height",
                         "max_view_angle_deg", "max_range"},
                     "sensor");
      read(s, "fov_diag_deg", c.sensor.fov_diag_deg);
      read(s, "image_width", c.sensor.image_width);
      read(s, "image_height", c.sensor.image_height);
      read(s, "max_view_angle_deg", c.sensor.max_view_angle_deg);
      read(s, "max_range", c.sensor.max_range);
    }
    if (doc.contains("sampling")) {
      const json& s = doc["sampling"];
      reject_unknown(s, {"num_via_points", "pair_distance", "field_range",
                         "safety_distance", "pose_spacing"},
                     "sampling");
      read(s, "num_via_points", c.num_via_points);
      read(s, "pair_distance", c.pair_distance);
      read(s, "field_range", c.field_range);
      read(s, "safety_distance", c.safety_distance);
      read(s, "pose_spacing", c.pose_spacing);
    }
    if (doc.contains("geometry")) {
      const json& g = doc["geometry"];
      reject_unknown(g, {"voxel_resolution", "max_patch_area", "fill_interior", "max_voxels"},
                     "geometry");
      read(g, "voxel_resolution", c.voxel_resolution);
      read(g, "max_patch_area", c.max_patch_area);
      read(g, "fill_interior", c.fill_interior);
      read(g, "max_voxels", c.max_voxels);
    }
    if (doc.contains("search")) {
      const json& s = doc["search"];
      reject_unknown(s, {"method", "coverage_target", "tie_break", "max_iterations",
                         "area_weighted"},
                     "search");
      read(s, "method", c.method);
      read(s, "coverage_target", c.search.coverage_target);
      read(s, "max_iterations", c.search.max_iterations);
      read(s, "area_weighted", c.search.area_weighted);
      if (s.contains("tie_break") &&
          s["tie_break"].get<std::string>() != "smallest_edge_id") {
        throw ConfigError("search.tie_break must be 'smallest_edge_id'");
      }
    }
    if (doc.contains("verify")) {
      const json& v = doc["verify"];
      reject_unknown(v, {"ray_cols", "ray_rows", "pose_spacing", "tolerance"}, "verify");
      read(v, "ray_cols", c.verify_cols);
      read(v, "ray_rows", c.verify_rows);
      read(v, "pose_spacing", c.verify_pose_spacing);
      read(v, "tolerance", c.tolerance);
    }
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("invalid config value: ") + ex.what());
  }
  c.resolve();
  c.validate();
  return c;
}

json config_to_json(const PlanConfig& in) {
  PlanConfig c = in;
  c.resolve();
  json doc;
  doc["format"] = kConfigFormat;
  doc["version"] = kConfigVersion;
  doc["mesh"] = c.mesh.string();
  doc["flip_normals"] = c.flip_normals;
  doc["seed"] = c.seed;
  doc["output_dir"] = c.output_dir.string();
  doc["debug"] = c.export_debug;
  doc["sensor"] = {{"fov_diag_deg", c.sensor.fov_diag_deg},
                   {"image_width", c.sensor.image_width},
                   {"image_height", c.sensor.image_height},
                   {"max_view_angle_deg", c.sensor.max_view_angle_deg},
                   {"max_range", c.sensor.max_range}};
  doc["sampling"] = {{"num_via_points", c.num_via_points},
                     {"pair_distance", *c.pair_distance},
                     {"field_range", *c.field_range},
                     {"safety_distance", c.safety_distance},
                     {"pose_spacing", *c.pose_spacing}};
  doc["geometry"] = {{"voxel_resolution", *c.voxel_resolution},
                     {"max_patch_area", c.max_patch_area},
                     {"fill_interior", c.fill_interior},
                     {"max_voxels", c.max_voxels}};
  doc["search"] = {{"method", c.method},
                   {"coverage_target", c.search.coverage_target},
                   {"tie_break", "smallest_edge_id"},
                   {"max_iterations", c.search.max_iterations},
                   {"area_weighted", c.search.area_weighted}};
  doc["verify"] = {{"ray_cols", c.verify_cols},
                   {"ray_rows", c.verify_rows},
                   {"pose_spacing", *c.verify_pose_spacing},
                   {"tolerance", c.tolerance}};
  return doc;
}

PlanConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path));
}

bool operator==(const PlanConfig& a, const PlanConfig& b) {
  return config_to_json(a) == config_to_json(b);
}

}  // namespace pcgplan
