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

#ifndef PCGPLAN_SEARCH_PATH_H_
#define PCGPLAN_SEARCH_PATH_H_

#include <string>
#include <vector>

#include "pcgplan/pcg/graph.h"
#include "pcgplan/sampling/sampling.h"

namespace pcgplan {

enum class StepKind {
  kInit,     // first edge of a search
  kGreedy,   // incident-edge argmax of gain per distance
  kEscape,   // zero-gain transit out of a dead end
  kTransit,  // baseline tour leg
};

const char* step_kind_name(StepKind kind);
StepKind parse_step_kind(const std::string& name);

struct PathStep {
  StepKind kind = StepKind::kGreedy;
  int edge = -1;
  int from = -1;  // node the edge was entered from
  int to = -1;
  double gain = 0.0;  // newly covered patches (or area when weighted)
  double cumulative_coverage = 0.0;
};

struct InspectionPath {
  std::string method;
  std::vector<int> nodes;  // v_0 .. v_T
  std::vector<int> edges;  // edge t joins nodes[t] and nodes[t + 1]
  double length = 0.0;
  double coverage = 0.0;
  std::vector<PathStep> steps;
};

enum class TieBreak { kSmallestEdgeId };

struct SearchParams {
  double coverage_target = 0.99;
  TieBreak tie_break = TieBreak::kSmallestEdgeId;
  int max_iterations = 100000;
  bool area_weighted = false;

  void validate() const;
};

// Number of patches that must be covered to reach `target` on m patches.
std::size_t required_patches(double target, std::size_t m);

// Union of the visibility of the distinct edges and visited nodes.
Coverage path_coverage(const PrimitiveCoverageGraph& graph,
                       const InspectionPath& path);

// Empty string when `path` is a consistent walk on `graph`, otherwise a
// description of the first problem found.
std::string check_walk(const PrimitiveCoverageGraph& graph,
                       const InspectionPath& path);

std::vector<Pose> path_node_poses(const PrimitiveCoverageGraph& graph,
                                  const InspectionPath& path);

// Pose stream along the walk, at most `spacing` apart, with view directions
// interpolated per edge. Repeated join poses are emitted once.
std::vector<Pose> sample_path_poses(const PrimitiveCoverageGraph& graph,
                                    const InspectionPath& path, double spacing);

// Append `edge` to `path`, entered from the current last node.
void append_edge(const PrimitiveCoverageGraph& graph, int edge,
                 InspectionPath& path);

}  // namespace pcgplan

#endif  // PCGPLAN_SEARCH_PATH_H_
