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

#include "pcgplan/pcg/graph.h"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

#include <spdlog/spdlog.h>

#include "pcgplan/parallel.h"

namespace pcgplan {

int PrimitiveCoverageGraph::add_node(const ViaPoint& vp, VisibilityVector visibility) {
  const int id = static_cast<int>(nodes_.size());
  PcgNode node{vp, std::move(visibility)};
  node.via_point.id = id;
  if (node.visibility.empty()) node.visibility = VisibilityVector(patch_count_);
  nodes_.push_back(std::move(node));
  adjacency_.emplace_back();
  return id;
}

std::optional<int> PrimitiveCoverageGraph::find_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= static_cast<int>(nodes_.size()) ||
      b >= static_cast<int>(nodes_.size())) {
    return std::nullopt;
  }
  for (int e : adjacency_[a]) {
    if (edges_[e].other(a) == b) return e;
  }
  return std::nullopt;
}

int PrimitiveCoverageGraph::add_edge(int a, int b, double length,
                                     VisibilityVector visibility,
                                     std::vector<Vec3> polyline) {
  const int n = static_cast<int>(nodes_.size());
  if (a < 0 || b < 0 || a >= n || b >= n) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  if (a == b) throw std::invalid_argument("self-loop edges are not allowed");
  if (!(length > 0.0)) throw std::invalid_argument("edge length must be positive");
  if (visibility.size() != patch_count_) {
    throw std::invalid_argument("edge visibility length differs from patch count");
  }
  if (a > b) std::swap(a, b);
  if (auto existing = find_edge(a, b)) {
    ++duplicates_;
    spdlog::warn("duplicate primitive between via-points {} and {}; keeping the shorter",
                 a, b);
    PcgEdge& e = edges_[*existing];
    if (length < e.length) {
      e.length = length;
      e.visibility = std::move(visibility);
      e.polyline = std::move(polyline);
    }
    return *existing;
  }
  const int id = static_cast<int>(edges_.size());
  edges_.push_back(PcgEdge{id, a, b, length, std::move(visibility), std::move(polyline)});
  adjacency_[a].push_back(id);
  adjacency_[b].push_back(id);
  return id;
}

void PrimitiveCoverageGraph::set_patch_areas(std::vector<double> areas) {
  if (!areas.empty() && areas.size() != patch_count_) {
    throw std::invalid_argument("patch area count differs from patch count");
  }
  patch_areas_ = std::move(areas);
}

void PrimitiveCoverageGraph::validate() const {
  const int n = static_cast<int>(nodes_.size());
  std::vector<std::vector<int>> expected(n);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const PcgEdge& e = edges_[i];
    const std::string tag = "edge " + std::to_string(i) + ": ";
    if (e.id != static_cast<int>(i)) throw std::logic_error(tag + "id mismatch");
    if (e.from < 0 || e.to < 0 || e.from >= n || e.to >= n) {
      throw std::logic_error(tag + "endpoint out of range");
    }
    if (e.from >= e.to) throw std::logic_error(tag + "endpoints not ordered");
    if (!(e.length > 0.0)) throw std::logic_error(tag + "non-positive length");
    if (e.visibility.size() != patch_count_) {
      throw std::logic_error(tag + "visibility length mismatch");
    }
    expected[e.from].push_back(e.id);
    expected[e.to].push_back(e.id);
  }
  std::vector<std::pair<int, int>> pairs;
  for (const PcgEdge& e : edges_) pairs.emplace_back(e.from, e.to);
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
    throw std::logic_error("parallel edges between one pair");
  }
  for (int v = 0; v < n; ++v) {
    if (adjacency_[v] != expected[v]) {
      throw std::logic_error("adjacency of node " + std::to_string(v) +
                             " disagrees with the edge list");
    }
    if (nodes_[v].visibility.size() != patch_count_) {
      throw std::logic_error("node visibility length mismatch");
    }
  }
}

PrimitiveCoverageGraph build_pcg(std::span<const ViaPoint> via_points,
                                 std::span<const PathPrimitive> primitives,
                                 const VisibilityModel& visibility) {
  const std::size_t m = visibility.patch_count();
  std::vector<VisibilityVector> node_vis(via_points.size());
  parallel_for(via_points.size(), [&](std::size_t i) {
    node_vis[i] = visibility.pose_visibility(via_points[i].pose());
  });
  std::vector<VisibilityVector> edge_vis(primitives.size());
  parallel_for(primitives.size(), [&](std::size_t i) {
    edge_vis[i] = visibility.primitive_visibility(primitives[i]);
  });

  PrimitiveCoverageGraph graph(m);
  std::vector<int> node_of(via_points.size());
  for (std::size_t i = 0; i < via_points.size(); ++i) {
    if (via_points[i].id != static_cast<int>(i)) {
      throw std::invalid_argument("via-point ids must be 0..n-1 in order");
    }
    graph.add_node(via_points[i], std::move(node_vis[i]));
  }
  for (std::size_t i = 0; i < primitives.size(); ++i) {
    const PathPrimitive& p = primitives[i];
    graph.add_edge(p.from, p.to, p.length, std::move(edge_vis[i]), p.polyline);
  }
  return graph;
}

Coverage coverage_of(const PrimitiveCoverageGraph& graph,
                     std::span<const int> edge_ids) {
  Coverage cov{DynamicBitset(graph.patch_count()), 0.0};
  for (int e : edge_ids) cov.covered.merge(graph.edge(e).visibility);
  if (graph.patch_count() > 0) {
    cov.ratio = static_cast<double>(cov.covered.count()) / graph.patch_count();
  }
  return cov;
}

double max_coverage(const PrimitiveCoverageGraph& graph) {
  std::vector<int> all(graph.edges().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return coverage_of(graph, all).ratio;
}

namespace {

struct Dijkstra {
  std::vector<double> dist;
  std::vector<int> via_edge;
};

// Runs until `stop` accepts a settled node; returns that node or -1.
int run_dijkstra(const PrimitiveCoverageGraph& graph, int from,
                 const std::function<bool(int)>& stop, Dijkstra& state) {
  const std::size_t n = graph.nodes().size();
  state.dist.assign(n, std::numeric_limits<double>::infinity());
  state.via_edge.assign(n, -1);
  std::vector<char> settled(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  state.dist[from] = 0.0;
  queue.emplace(0.0, from);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (settled[v]) continue;
    settled[v] = 1;
    if (stop && stop(v)) return v;
    for (int e : graph.incident(v)) {
      const PcgEdge& edge = graph.edge(e);
      const int w = edge.other(v);
      const double nd = d + edge.length;
      if (nd < state.dist[w]) {
        state.dist[w] = nd;
        state.via_edge[w] = e;
        queue.emplace(nd, w);
      }
    }
  }
  return -1;
}

}  // namespace

std::optional<Walk> shortest_walk(const PrimitiveCoverageGraph& graph, int from,
                                  const std::function<bool(int)>& target) {
  if (from < 0 || from >= static_cast<int>(graph.nodes().size())) {
    throw std::invalid_argument("shortest_walk: start node out of range");
  }
  Dijkstra state;
  const int goal = run_dijkstra(graph, from, target, state);
  if (goal < 0) return std::nullopt;
  Walk walk;
  walk.cost = state.dist[goal];
  for (int v = goal; v != from;) {
    const int e = state.via_edge[v];
    walk.edges.push_back(e);
    walk.nodes.push_back(v);
    v = graph.edge(e).other(v);
  }
  walk.nodes.push_back(from);
  std::reverse(walk.edges.begin(), walk.edges.end());
  std::reverse(walk.nodes.begin(), walk.nodes.end());
  return walk;
}

std::vector<double> shortest_distances(const PrimitiveCoverageGraph& graph,
                                       int from) {
  Dijkstra state;
  run_dijkstra(graph, from, nullptr, state);
  return state.dist;
}

std::vector<int> connected_components(const PrimitiveCoverageGraph& graph) {
  const int n = static_cast<int>(graph.nodes().size());
  std::vector<int> comp(n, -1);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = s;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : graph.incident(v)) {
        const int w = graph.edge(e).other(v);
        if (comp[w] < 0) {
          comp[w] = s;
          stack.push_back(w);
        }
      }
    }
  }
  return comp;
}

}  // namespace pcgplan
