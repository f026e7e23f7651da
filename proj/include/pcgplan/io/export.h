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

#ifndef PCGPLAN_IO_EXPORT_H_
#define PCGPLAN_IO_EXPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcgplan/pcg/graph.h"
#include "pcgplan/sampling/sampling.h"
#include "pcgplan/search/path.h"
#include "pcgplan/verify/verify.h"

namespace pcgplan {

inline constexpr const char* kPathFormat = "pcgplan-path";
inline constexpr int kPathFormatVersion = 1;

// Lowercase hex SHA-256 of the file contents. Throws IoError.
std::string sha256_file(const std::filesystem::path& path);

struct PathMeta {
  std::string manifest = "manifest.json";
  std::string mesh_sha256;
  double coverage_target = 0.0;
};

nlohmann::json path_to_json(const PrimitiveCoverageGraph& graph,
                            const InspectionPath& path, const PathMeta& meta);

// What a path file carries on its own, without the graph.
struct PathDocument {
  std::string method;
  std::string mesh_sha256;
  std::string manifest;
  std::size_t patch_count = 0;
  double length = 0.0;
  double coverage = 0.0;
  double coverage_target = 0.0;
  std::vector<int> node_ids;
  std::vector<Pose> nodes;
  std::vector<int> edges;
  std::vector<PathStep> steps;
};

// Throws ConfigError on malformed documents.
PathDocument path_from_json(const nlohmann::json& doc);

// Waypoint stream with header "x,y,z,dx,dy,dz".
void write_path_csv(std::span<const Pose> poses, const std::filesystem::path& path);
// ASCII PLY polyline through the pose positions.
void write_path_ply(std::span<const Pose> poses, const std::filesystem::path& path);
// ASCII PLY point cloud.
void write_points_ply(std::span<const Vec3> points, const std::filesystem::path& path);

void write_via_points_jsonl(std::span<const ViaPoint> via_points,
                            const std::filesystem::path& path);
void write_primitives_jsonl(std::span<const PathPrimitive> primitives,
                            const std::filesystem::path& path);

nlohmann::json report_to_json(const CoverageReport& report);

}  // namespace pcgplan

#endif  // PCGPLAN_IO_EXPORT_H_
