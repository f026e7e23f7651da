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

#ifndef PCGPLAN_CLI_CONFIG_H_
#define PCGPLAN_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "pcgplan/geometry/voxel_grid.h"
#include "pcgplan/sampling/sampling.h"
#include "pcgplan/search/path.h"
#include "pcgplan/verify/verify.h"
#include "pcgplan/visibility/visibility.h"

namespace pcgplan {

inline constexpr const char* kConfigFormat = "pcgplan-config";
inline constexpr int kConfigVersion = 1;

// Planner configuration. Unset optional fields take derived defaults in
// resolve(): r = min(d_safe, 2) / 2, pair distance = d_vis / 2, field range =
// d_vis, pose spacing = 2 r, verify spacing = pose spacing.
struct PlanConfig {
  std::filesystem::path mesh;
  bool flip_normals = false;
  uint64_t seed = 1;
  std::filesystem::path output_dir = "pcgplan_out";
  std::string method = "gns";  // gns | greedy | vpp-tsp

  SensorModel sensor;

  int num_via_points = 300;
  std::optional<double> pair_distance;
  std::optional<double> field_range;
  double safety_distance = 2.0;
  std::optional<double> pose_spacing;

  std::optional<double> voxel_resolution;
  double max_patch_area = 1.0;
  bool fill_interior = true;
  std::size_t max_voxels = 200'000'000;

  SearchParams search;

  int verify_cols = 320;
  int verify_rows = 240;
  std::optional<double> verify_pose_spacing;
  double tolerance = 0.04;  // allowed shortfall of measured vs planned coverage

  bool export_debug = false;  // via-point / primitive JSONL dumps

  // Fills derived defaults. Idempotent.
  void resolve();
  // Throws ConfigError. Call after resolve().
  void validate() const;

  double resolution() const { return *voxel_resolution; }
  SamplingParams sampling_params() const;
  VoxelizeOptions voxelize_options() const;
  VerifyOptions verify_options() const;
};

// Strict parse: unknown keys, wrong types and bad versions throw ConfigError.
// The result is resolved and validated.
PlanConfig config_from_json(const nlohmann::json& doc);
// Fully resolved document; config_from_json(config_to_json(c)) == c.
nlohmann::json config_to_json(const PlanConfig& config);
PlanConfig load_config(const std::filesystem::path& path);

bool operator==(const PlanConfig& a, const PlanConfig& b);

}  // namespace pcgplan

#endif  // PCGPLAN_CLI_CONFIG_H_
