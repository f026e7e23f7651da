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

#ifndef PCGPLAN_CLI_COMMANDS_H_
#define PCGPLAN_CLI_COMMANDS_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pcgplan/cli/config.h"
#include "pcgplan/cli/structures.h"
#include "pcgplan/geometry/mesh.h"
#include "pcgplan/geometry/patches.h"
#include "pcgplan/pcg/graph.h"
#include "pcgplan/sampling/sampling.h"
#include "pcgplan/search/path.h"
#include "pcgplan/visibility/visibility.h"

namespace pcgplan {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIoError = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitUnreachable = 3;
inline constexpr int kExitCoverageShortfall = 4;

// Mesh-derived state shared by planning and verification.
struct Scene {
  TriangleMesh mesh;
  SurfacePatchSet patches;
  std::unique_ptr<BvhRayCaster> caster;

  Scene(TriangleMesh m, double max_patch_area);
};

struct PlanningGraph {
  SamplingGrids grids;
  std::vector<ViaPoint> via_points;
  std::vector<PathPrimitive> primitives;
  PrimitiveCoverageGraph graph;
  std::map<std::string, double> timings;  // seconds per stage
};

// Voxelization, sampling, visibility and graph construction.
PlanningGraph build_planning_graph(const Scene& scene, const PlanConfig& config);

// Dispatches on config.method.
InspectionPath run_search(const PrimitiveCoverageGraph& graph, const std::string& method,
                          const SearchParams& params);

// Each command logs failures and returns a process exit code.
int cmd_plan(const PlanConfig& config);
// `mesh` and `config` override what the run manifest next to the path file
// records; `out_dir` defaults to the path file's directory.
int cmd_verify(const std::filesystem::path& path_json,
               const std::optional<std::filesystem::path>& mesh,
               const std::optional<PlanConfig>& config,
               const std::optional<std::filesystem::path>& out_dir = std::nullopt);
int cmd_gen_structure(StructureKind kind, const std::vector<double>& dims,
                      const std::filesystem::path& out);
// Prints mesh statistics, or graph statistics for a graph JSON file.
int cmd_inspect(const std::filesystem::path& file, std::ostream& out);

}  // namespace pcgplan

#endif  // PCGPLAN_CLI_COMMANDS_H_
