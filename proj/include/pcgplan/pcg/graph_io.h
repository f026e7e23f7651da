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

#ifndef PCGPLAN_PCG_GRAPH_IO_H_
#define PCGPLAN_PCG_GRAPH_IO_H_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "pcgplan/pcg/graph.h"

namespace pcgplan {

inline constexpr const char* kGraphFormat = "pcgplan-graph";
inline constexpr int kGraphFormatVersion = 1;

nlohmann::json vec_to_json(const Vec3& v);
Vec3 vec_from_json(const nlohmann::json& j);

// Single JSON document: {format, version, meta, nodes[], edges[]}. Bitsets
// are hex strings (see DynamicBitset::to_hex). `meta` is stored verbatim,
// with patch_count (and patch_areas when present) added.
nlohmann::json graph_to_json(const PrimitiveCoverageGraph& graph,
                             const nlohmann::json& meta = nlohmann::json::object());
// Throws ConfigError on a wrong format tag, version or malformed content.
PrimitiveCoverageGraph graph_from_json(const nlohmann::json& doc);

void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace pcgplan

#endif  // PCGPLAN_PCG_GRAPH_IO_H_
