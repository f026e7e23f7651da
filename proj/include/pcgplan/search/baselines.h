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

#ifndef PCGPLAN_SEARCH_BASELINES_H_
#define PCGPLAN_SEARCH_BASELINES_H_

#include <vector>

#include "pcgplan/pcg/graph.h"
#include "pcgplan/search/path.h"

namespace pcgplan {

using DistanceMatrix = std::vector<std::vector<double>>;

// Open tour over all indices of `dist`, starting at index 0.
std::vector<int> nearest_neighbor_tour(const DistanceMatrix& dist);
// First-improvement 2-opt on an open tour; either end may move. Returns the
// number of moves made.
int two_opt(std::vector<int>& tour, const DistanceMatrix& dist,
            int max_moves = 10000);
double open_tour_length(const std::vector<int>& tour, const DistanceMatrix& dist);

// Viewpoint selection followed by tour ordering; the returned path
// concatenates shortest walks between consecutive viewpoints.
//
// The greedy method scores candidates by new coverage divided by the
// shortest-walk distance from the last selected viewpoint. VPP-TSP is plain
// greedy set cover on coverage gain. Both throw UnreachableCoverageError when
// the viewpoints alone cannot reach the target.
InspectionPath baseline_greedy_viewpoints(const PrimitiveCoverageGraph& graph,
                                          const SearchParams& params);
InspectionPath baseline_vpp_tsp(const PrimitiveCoverageGraph& graph,
                                const SearchParams& params);

// Orders `viewpoints` (node ids) into an open tour and realizes
// the tour on the graph. Exposed for tests.
InspectionPath tour_path(const PrimitiveCoverageGraph& graph,
                         const std::vector<int>& viewpoints,
                         const std::string& method);

}  // namespace pcgplan

#endif  // PCGPLAN_SEARCH_BASELINES_H_
