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

#include "pcgplan/search/path.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pcgplan/errors.h"

namespace pcgplan {

const char* step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::kInit:
      return "init";
    case StepKind::kGreedy:
      return "greedy";
    case StepKind::kEscape:
      return "escape";
    case StepKind::kTransit:
      return "transit";
  }
  return "?";
}

StepKind parse_step_kind(const std::string& name) {
  if (name == "init") return StepKind::kInit;
  if (name == "greedy") return StepKind::kGreedy;
  if (name == "escape") return StepKind::kEscape;
  if (name == "transit") return StepKind::kTransit;
  throw ConfigError("unknown step kind '" + name + "'");
}

void SearchParams::validate() const {
  if (!(coverage_target > 0.0 && coverage_target <= 1.0)) {
    throw ConfigError("search.coverage_target must lie in (0, 1]");
  }
  if (max_iterations < 1) throw ConfigError("search.max_iterations must be >= 1");
}

std::size_t required_patches(double target, std::size_t m) {
  const double need = std::ceil(target * static_cast<double>(m) - 1e-9);
  return need <= 0.0 ? 0 : static_cast<std::size_t>(need);
}

Coverage path_coverage(const PrimitiveCoverageGraph& graph,
                       const InspectionPath& path) {
  std::set<int> distinct(path.edges.begin(), path.edges.end());
  std::vector<int> ids(distinct.begin(), distinct.end());
  Coverage cov = coverage_of(graph, ids);
  for (int v : path.nodes) cov.covered.merge(graph.node(v).visibility);
  if (graph.patch_count() > 0) {
    cov.ratio = static_cast<double>(cov.covered.count()) / graph.patch_count();
  }
  return cov;
}

std::string check_walk(const PrimitiveCoverageGraph& graph,
                       const InspectionPath& path) {
  std::ostringstream err;
  const int n = static_cast<int>(graph.nodes().size());
  const int ne = static_cast<int>(graph.edges().size());
  if (path.nodes.size() != path.edges.size() + 1) {
    err << "expected " << path.edges.size() + 1 << " nodes, got " << path.nodes.size();
    return err.str();
  }
  for (int v : path.nodes) {
    if (v < 0 || v >= n) {
      err << "node " << v << " out of range";
      return err.str();
    }
  }
  double length = 0.0;
  for (std::size_t t = 0; t < path.edges.size(); ++t) {
    const int e = path.edges[t];
    if (e < 0 || e >= ne) {
      err << "edge " << e << " out of range";
      return err.str();
    }
    const PcgEdge& edge = graph.edge(e);
    const int a = path.nodes[t];
    const int b = path.nodes[t + 1];
    if (!((edge.from == a && edge.to == b) || (edge.from == b && edge.to == a))) {
      err << "edge " << e << " at step " << t << " does not join " << a << " and " << b;
      return err.str();
    }
    length += edge.length;
  }
  if (std::abs(length - path.length) > 1e-9 * std::max(1.0, length)) {
    err << "length " << path.length << " != edge sum " << length;
    return err.str();
  }
  return "";
}

std::vector<Pose> path_node_poses(const PrimitiveCoverageGraph& graph,
                                  const InspectionPath& path) {
  std::vector<Pose> out;
  out.reserve(path.nodes.size());
  for (int v : path.nodes) out.push_back(graph.node(v).via_point.pose());
  return out;
}

std::vector<Pose> sample_path_poses(const PrimitiveCoverageGraph& graph,
                                    const InspectionPath& path, double spacing) {
  std::vector<Pose> out;
  if (path.nodes.empty()) return out;
  out.push_back(graph.node(path.nodes.front()).via_point.pose());
  for (std::size_t t = 0; t < path.edges.size(); ++t) {
    const PcgEdge& edge = graph.edge(path.edges[t]);
    const ViaPoint& a = graph.node(path.nodes[t]).via_point;
    const ViaPoint& b = graph.node(path.nodes[t + 1]).via_point;
    std::vector<Vec3> poly = edge.polyline;
    if (poly.size() < 2) {
      poly = {a.position, b.position};
    } else if (a.id != edge.from) {
      std::reverse(poly.begin(), poly.end());
    }
    auto prim = make_primitive(a, b, std::move(poly), spacing);
    if (prim) {
      out.insert(out.end(), prim->poses.begin() + 1, prim->poses.end());
    } else {
      const Pose ends[2] = {a.pose(), b.pose()};
      const auto poses = sample_walk_poses(ends, spacing);
      out.insert(out.end(), poses.begin() + 1, poses.end());
    }
  }
  return out;
}

void append_edge(const PrimitiveCoverageGraph& graph, int edge,
                 InspectionPath& path) {
  const PcgEdge& e = graph.edge(edge);
  const int at = path.nodes.back();
  if (e.from != at && e.to != at) {
    throw std::logic_error("walk property violated: edge does not touch current node");
  }
  path.edges.push_back(edge);
  path.nodes.push_back(e.other(at));
  path.length += e.length;
}

}  // namespace pcgplan
