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

#ifndef PCGPLAN_PCG_GRAPH_H_
#define PCGPLAN_PCG_GRAPH_H_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pcgplan/bitset.h"
#include "pcgplan/sampling/sampling.h"
#include "pcgplan/visibility/visibility.h"

namespace pcgplan {

struct PcgNode {
  ViaPoint via_point;
  VisibilityVector visibility;  // single pose at the via-point
};

struct PcgEdge {
  int id = -1;
  int from = -1;  // from < to
  int to = -1;
  double length = 0.0;
  VisibilityVector visibility;
  std::vector<Vec3> polyline;

  int other(int node) const { return node == from ? to : from; }
};

// Undirected simple graph over via-points; edges are path primitives carrying
// their flying distance and patch visibility.
class PrimitiveCoverageGraph {
 public:
  PrimitiveCoverageGraph() = default;
  explicit PrimitiveCoverageGraph(std::size_t patch_count)
      : patch_count_(patch_count) {}

  int add_node(const ViaPoint& vp, VisibilityVector visibility);
  // Adds an edge, or keeps the shorter one when the pair is already
  // connected. Returns the id of the edge retained for the pair.
  int add_edge(int a, int b, double length, VisibilityVector visibility,
               std::vector<Vec3> polyline = {});

  std::size_t patch_count() const { return patch_count_; }
  const std::vector<PcgNode>& nodes() const { return nodes_; }
  const std::vector<PcgEdge>& edges() const { return edges_; }
  const PcgNode& node(int id) const { return nodes_[id]; }
  const PcgEdge& edge(int id) const { return edges_[id]; }
  // Incident edge ids in ascending order.
  std::span<const int> incident(int node) const { return adjacency_[node]; }
  std::optional<int> find_edge(int a, int b) const;
  std::size_t duplicates_resolved() const { return duplicates_; }

  // Optional per-patch areas, used for area-weighted gains.
  const std::vector<double>& patch_areas() const { return patch_areas_; }
  void set_patch_areas(std::vector<double> areas);

  // Throws std::logic_error describing the first violated invariant.
  void validate() const;

 private:
  std::size_t patch_count_ = 0;
  std::vector<PcgNode> nodes_;
  std::vector<PcgEdge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<double> patch_areas_;
  std::size_t duplicates_ = 0;
};

// Evaluates visibility for every via-point and primitive (in parallel) and
// assembles the graph. Primitive endpoints must be valid via-point ids.
PrimitiveCoverageGraph build_pcg(std::span<const ViaPoint> via_points,
                                 std::span<const PathPrimitive> primitives,
                                 const VisibilityModel& visibility);

struct Coverage {
  DynamicBitset covered;
  double ratio = 0.0;
};

Coverage coverage_of(const PrimitiveCoverageGraph& graph,
                     std::span<const int> edge_ids);
// Coverage of the whole edge set: the best any walk can reach.
double max_coverage(const PrimitiveCoverageGraph& graph);

struct Walk {
  std::vector<int> edges;
  std::vector<int> nodes;  // starts at the source, one more than edges
  double cost = 0.0;
};

// Least-cost walk from `from` to the nearest node satisfying `target`
// (uniform-cost search, ties by node id). nullopt when none is reachable.
std::optional<Walk> shortest_walk(const PrimitiveCoverageGraph& graph, int from,
                                  const std::function<bool(int)>& target);

// Single-source shortest-walk distances (infinity when unreachable).
std::vector<double> shortest_distances(const PrimitiveCoverageGraph& graph,
                                       int from);

// Connected component id per node; components are numbered by their
// smallest node id.
std::vector<int> connected_components(const PrimitiveCoverageGraph& graph);

}  // namespace pcgplan

#endif  // PCGPLAN_PCG_GRAPH_H_
