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

#ifndef PCGPLAN_SEARCH_GNS_H_
#define PCGPLAN_SEARCH_GNS_H_

#include "pcgplan/pcg/graph.h"
#include "pcgplan/search/path.h"

namespace pcgplan {

// Greedy Neighborhood Search. Starts on the edge with the best global
// gain/length ratio, then repeatedly takes the incident edge with the best
// marginal gain per metre. Ties within a relative 1e-12 go to the smallest
// edge id. When no incident edge adds coverage the walk escapes along the
// shortest path to the nearest node that has a positive-gain edge.
//
// Throws UnreachableCoverageError when the target exceeds what the graph (or
// any single connected component of it) can cover, and SearchError when the
// iteration cap is hit.
InspectionPath gns(const PrimitiveCoverageGraph& graph, const SearchParams& params);

}  // namespace pcgplan

#endif  // PCGPLAN_SEARCH_GNS_H_
