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

#include "pcgplan/search/baselines.h"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include <spdlog/spdlog.h>

#include "pcgplan/errors.h"

namespace pcgplan {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Nodes of the largest connected component, ascending. Ties go to the
// component containing the smallest node id.
std::vector<int> largest_component(const PrimitiveCoverageGraph& graph) {
  const std::vector<int> comp = connected_components(graph);
  std::map<int, int> sizes;
  for (int c : comp) ++sizes[c];
  int best = -1, best_size = 0;
  for (const auto& [label, size] : sizes) {
    if (size > best_size) {
      best = label;
      best_size = size;
    }
  }
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(comp.size()); ++v) {
    if (comp[v] == best) out.push_back(v);
  }
  return out;
}

enum class Scoring { kGainPerDistance, kGainOnly };

std::vector<int> select_viewpoints(const PrimitiveCoverageGraph& graph,
                                   const SearchParams& params, Scoring scoring) {
  params.validate();
  const std::size_t m = graph.patch_count();
  if (m == 0) throw ConfigError("graph has no patches");
  const std::size_t required = required_patches(params.coverage_target, m);
  const std::vector<int> candidates = largest_component(graph);

  DynamicBitset reachable(m);
  for (int v : candidates) reachable.merge(graph.node(v).visibility);
  if (reachable.count() < required) {
    const double best = static_cast<double>(reachable.count()) / m;
    std::ostringstream msg;
    msg << "viewpoints reach at most coverage " << best << " < target "
        << params.coverage_target;
    throw UnreachableCoverageError(msg.str(), best);
  }

  DynamicBitset covered(m);
  std::vector<char> taken(graph.nodes().size(), 0);
  std::vector<int> selected;
  std::vector<double> dist;
  while (covered.count() < required) {
    std::vector<double> gains(candidates.size(), 0.0);
    std::vector<double> scores(candidates.size(), 0.0);
    double best = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const int v = candidates[i];
      if (taken[v]) continue;
      gains[i] = static_cast<double>(covered.count_new(graph.node(v).visibility));
      if (gains[i] <= 0.0) continue;
      if (scoring == Scoring::kGainOnly || selected.empty()) {
        scores[i] = gains[i];
      } else {
        scores[i] = dist[v] > 0.0 ? gains[i] / dist[v] : kInf;
      }
      best = std::max(best, scores[i]);
    }
    if (best <= 0.0) throw SearchError("viewpoint selection stalled");
    const double threshold = std::isinf(best) ? best : best * (1.0 - kTieTolerance);
    int pick = -1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (gains[i] > 0.0 && scores[i] >= threshold) {
        pick = candidates[i];
        break;
      }
    }
    taken[pick] = 1;
    selected.push_back(pick);
    covered.merge(graph.node(pick).visibility);
    if (scoring == Scoring::kGainPerDistance) dist = shortest_distances(graph, pick);
  }
  return selected;
}

}  // namespace

std::vector<int> nearest_neighbor_tour(const DistanceMatrix& dist) {
  const int n = static_cast<int>(dist.size());
  std::vector<int> tour;
  if (n == 0) return tour;
  std::vector<char> used(n, 0);
  tour.push_back(0);
  used[0] = 1;
  for (int step = 1; step < n; ++step) {
    const int at = tour.back();
    int next = -1;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (next < 0 || dist[at][j] < dist[at][next]) next = j;
    }
    used[next] = 1;
    tour.push_back(next);
  }
  return tour;
}

double open_tour_length(const std::vector<int>& tour, const DistanceMatrix& dist) {
  double total = 0.0;
  for (std::size_t i = 1; i < tour.size(); ++i) total += dist[tour[i - 1]][tour[i]];
  return total;
}

int two_opt(std::vector<int>& tour, const DistanceMatrix& dist, int max_moves) {
  const int n = static_cast<int>(tour.size());
  int moves = 0;
  bool improved = true;
  while (improved && moves < max_moves) {
    improved = false;
    for (int i = 0; i < n - 1 && moves < max_moves; ++i) {
      for (int j = i + 1; j < n && moves < max_moves; ++j) {
        // Reversing tour[i..j] replaces (i-1,i) and (j,j+1).
        double before = 0.0, after = 0.0;
        if (i > 0) {
          before += dist[tour[i - 1]][tour[i]];
          after += dist[tour[i - 1]][tour[j]];
        }
        if (j + 1 < n) {
          before += dist[tour[j]][tour[j + 1]];
          after += dist[tour[i]][tour[j + 1]];
        }
        if (after < before - 1e-9) {
          std::reverse(tour.begin() + i, tour.begin() + j + 1);
          ++moves;
          improved = true;
        }
      }
    }
  }
  return moves;
}

InspectionPath tour_path(const PrimitiveCoverageGraph& graph,
                         const std::vector<int>& viewpoints,
                         const std::string& method) {
  InspectionPath path;
  path.method = method;
  if (viewpoints.empty()) return path;
  const std::size_t k = viewpoints.size();
  DistanceMatrix dist(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    const std::vector<double> d = shortest_distances(graph, viewpoints[i]);
    for (std::size_t j = 0; j < k; ++j) dist[i][j] = d[viewpoints[j]];
  }
  std::vector<int> order = nearest_neighbor_tour(dist);
  two_opt(order, dist);

  const std::size_t m = graph.patch_count();
  DynamicBitset covered(m);
  path.nodes.push_back(viewpoints[order[0]]);
  covered.merge(graph.node(path.nodes.back()).visibility);
  for (std::size_t s = 1; s < order.size(); ++s) {
    const int target = viewpoints[order[s]];
    const auto walk =
        shortest_walk(graph, path.nodes.back(), [target](int v) { return v == target; });
    if (!walk) throw SearchError("tour viewpoints are not connected");
    for (int e : walk->edges) {
      const int from = path.nodes.back();
      append_edge(graph, e, path);
      const std::size_t before = covered.count();
      covered.merge(graph.edge(e).visibility);
      covered.merge(graph.node(path.nodes.back()).visibility);
      path.steps.push_back({StepKind::kTransit, e, from, path.nodes.back(),
                            static_cast<double>(covered.count() - before),
                            m ? static_cast<double>(covered.count()) / m : 0.0});
    }
  }
  path.coverage = path_coverage(graph, path).ratio;
  return path;
}

InspectionPath baseline_greedy_viewpoints(const PrimitiveCoverageGraph& graph,
                                          const SearchParams& params) {
  const auto selected = select_viewpoints(graph, params, Scoring::kGainPerDistance);
  spdlog::debug("greedy baseline: {} viewpoints", selected.size());
  return tour_path(graph, selected, "greedy");
}

InspectionPath baseline_vpp_tsp(const PrimitiveCoverageGraph& graph,
                                const SearchParams& params) {
  const auto selected = select_viewpoints(graph, params, Scoring::kGainOnly);
  spdlog::debug("vpp-tsp baseline: {} viewpoints", selected.size());
  return tour_path(graph, selected, "vpp-tsp");
}

}  // namespace pcgplan
