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

#include "pcgplan/search/gns.h"

#include <limits>
#include <map>
#include <sstream>

#include <spdlog/spdlog.h>

#include "pcgplan/errors.h"

namespace pcgplan {
namespace {

constexpr double kTieTolerance = 1e-12;

class GainModel {
 public:
  GainModel(const PrimitiveCoverageGraph& graph, bool area_weighted)
      : graph_(graph), weighted_(area_weighted && !graph.patch_areas().empty()) {}

  double gain(int edge, const DynamicBitset& covered) const {
    const DynamicBitset& vis = graph_.edge(edge).visibility;
    if (!weighted_) return static_cast<double>(covered.count_new(vis));
    double area = 0.0;
    for (std::size_t k : vis.set_bits()) {
      if (!covered.test(k)) area += graph_.patch_areas()[k];
    }
    return area;
  }

 private:
  const PrimitiveCoverageGraph& graph_;
  bool weighted_;
};

double ratio(double gain, double length) {
  if (length <= 0.0) return gain > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return gain / length;
}

// Smallest candidate id whose ratio is within the relative tolerance of the
// best one. Candidates must be in ascending id order. Returns -1 when no
// candidate has positive gain.
int pick_best(const std::vector<int>& candidates, const std::vector<double>& gains,
              const std::vector<double>& ratios) {
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (gains[i] <= 0.0) continue;
    if (!any || ratios[i] > best) best = ratios[i];
    any = true;
  }
  if (!any) return -1;
  const double threshold = std::isinf(best) ? best : best * (1.0 - kTieTolerance);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (gains[i] > 0.0 && ratios[i] >= threshold) return candidates[i];
  }
  return -1;
}

}  // namespace

InspectionPath gns(const PrimitiveCoverageGraph& graph, const SearchParams& params) {
  params.validate();
  const std::size_t m = graph.patch_count();
  if (m == 0) throw ConfigError("graph has no patches");
  const std::size_t required = required_patches(params.coverage_target, m);

  const double delta_max = max_coverage(graph);
  if (static_cast<double>(required) > delta_max * m + 0.5) {
    std::ostringstream msg;
    msg << "coverage target " << params.coverage_target
        << " exceeds the graph maximum " << delta_max;
    throw UnreachableCoverageError(msg.str(), delta_max);
  }

  // Only components that can reach the target on their own are eligible
  // starting points; the walk never leaves its component.
  const std::vector<int> comp = connected_components(graph);
  std::map<int, DynamicBitset> comp_cover;
  for (const PcgEdge& e : graph.edges()) {
    auto [it, inserted] = comp_cover.try_emplace(comp[e.from], m);
    it->second.merge(e.visibility);
  }
  double best_component = 0.0;
  for (const auto& [label, bits] : comp_cover) {
    best_component = std::max(best_component, static_cast<double>(bits.count()) / m);
  }
  auto component_ok = [&](int label) {
    auto it = comp_cover.find(label);
    return it != comp_cover.end() && it->second.count() >= required;
  };

  const GainModel model(graph, params.area_weighted);
  DynamicBitset covered(m);
  InspectionPath path;
  path.method = "gns";

  {
    std::vector<int> cand;
    std::vector<double> gains, ratios;
    for (const PcgEdge& e : graph.edges()) {
      if (!component_ok(comp[e.from])) continue;
      cand.push_back(e.id);
      gains.push_back(model.gain(e.id, covered));
      ratios.push_back(ratio(gains.back(), e.length));
    }
    const int first = pick_best(cand, gains, ratios);
    if (first < 0) {
      std::ostringstream msg;
      msg << "no connected component reaches coverage " << params.coverage_target
          << " (best component " << best_component << ")";
      throw UnreachableCoverageError(msg.str(), best_component);
    }
    const PcgEdge& e = graph.edge(first);
    const double gain = model.gain(first, covered);
    path.nodes.push_back(e.from);
    append_edge(graph, first, path);
    covered.merge(e.visibility);
    path.steps.push_back({StepKind::kInit, first, e.from, e.to, gain,
                          static_cast<double>(covered.count()) / m});
  }

  int iterations = 0;
  while (covered.count() < required) {
    if (++iterations > params.max_iterations) {
      throw SearchError("search exceeded " + std::to_string(params.max_iterations) +
                        " iterations");
    }
    const int at = path.nodes.back();
    const auto incident = graph.incident(at);
    std::vector<int> cand(incident.begin(), incident.end());
    std::vector<double> gains(cand.size()), ratios(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
      gains[i] = model.gain(cand[i], covered);
      ratios[i] = ratio(gains[i], graph.edge(cand[i]).length);
    }
    const int chosen = pick_best(cand, gains, ratios);
    if (chosen >= 0) {
      const double gain = model.gain(chosen, covered);
      append_edge(graph, chosen, path);
      covered.merge(graph.edge(chosen).visibility);
      path.steps.push_back({StepKind::kGreedy, chosen, at, path.nodes.back(), gain,
                            static_cast<double>(covered.count()) / m});
      continue;
    }

    auto has_gain = [&](int v) {
      for (int e : graph.incident(v)) {
        if (covered.count_new(graph.edge(e).visibility) > 0) return true;
      }
      return false;
    };
    const auto walk = shortest_walk(graph, at, has_gain);
    if (!walk) {
      // Unreachable only if the component check above was wrong.
      throw SearchError("dead end with no reachable coverage gain");
    }
    for (int e : walk->edges) {
      const int from = path.nodes.back();
      append_edge(graph, e, path);
      path.steps.push_back({StepKind::kEscape, e, from, path.nodes.back(), 0.0,
                            static_cast<double>(covered.count()) / m});
    }
  }

  path.coverage = static_cast<double>(covered.count()) / m;
  const std::string problem = check_walk(graph, path);
  if (!problem.empty()) throw std::logic_error("gns produced an invalid walk: " + problem);
  spdlog::debug("gns: {} edges, length {:.3f}, coverage {:.4f}", path.edges.size(),
                path.length, path.coverage);
  return path;
}

}  // namespace pcgplan
