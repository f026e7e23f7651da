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

#include "pcgplan/pcg/graph_io.h"

#include <fstream>
#include <string>

#include "pcgplan/errors.h"

namespace pcgplan {

using nlohmann::json;

json vec_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json graph_to_json(const PrimitiveCoverageGraph& graph, const json& meta) {
  json doc;
  doc["format"] = kGraphFormat;
  doc["version"] = kGraphFormatVersion;
  json m = meta.is_object() ? meta : json::object();
  m["patch_count"] = graph.patch_count();
  if (!graph.patch_areas().empty()) m["patch_areas"] = graph.patch_areas();
  doc["meta"] = std::move(m);

  json nodes = json::array();
  for (const PcgNode& n : graph.nodes()) {
    nodes.push_back({{"id", n.via_point.id},
                     {"position", vec_to_json(n.via_point.position)},
                     {"direction", vec_to_json(n.via_point.direction)},
                     {"visibility", n.visibility.to_hex()}});
  }
  doc["nodes"] = std::move(nodes);

  json edges = json::array();
  for (const PcgEdge& e : graph.edges()) {
    json poly = json::array();
    for (const Vec3& p : e.polyline) poly.push_back(vec_to_json(p));
    edges.push_back({{"id", e.id},
                     {"from", e.from},
                     {"to", e.to},
                     {"length", e.length},
                     {"visibility", e.visibility.to_hex()},
                     {"polyline", std::move(poly)}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

PrimitiveCoverageGraph graph_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kGraphFormat) {
      throw ConfigError("not a pcgplan graph document");
    }
    if (doc.at("version").get<int>() != kGraphFormatVersion) {
      throw ConfigError("unsupported graph format version");
    }
    const json& meta = doc.at("meta");
    const std::size_t m = meta.at("patch_count").get<std::size_t>();
    PrimitiveCoverageGraph graph(m);
    if (meta.contains("patch_areas")) {
      graph.set_patch_areas(meta["patch_areas"].get<std::vector<double>>());
    }
    for (const json& n : doc.at("nodes")) {
      ViaPoint vp;
      vp.id = n.at("id").get<int>();
      vp.position = vec_from_json(n.at("position"));
      vp.direction = vec_from_json(n.at("direction"));
      const int id = graph.add_node(
          vp, DynamicBitset::from_hex(n.at("visibility").get<std::string>(), m));
      if (id != vp.id) throw ConfigError("graph node ids must be 0..n-1 in order");
    }
    for (const json& e : doc.at("edges")) {
      std::vector<Vec3> poly;
      if (e.contains("polyline")) {
        for (const json& p : e["polyline"]) poly.push_back(vec_from_json(p));
      }
      const int id = graph.add_edge(
          e.at("from").get<int>(), e.at("to").get<int>(), e.at("length").get<double>(),
          DynamicBitset::from_hex(e.at("visibility").get<std::string>(), m),
          std::move(poly));
      if (id != e.at("id").get<int>()) {
        throw ConfigError("graph edge ids must be 0..n-1 in order");
      }
    }
    graph.validate();
    return graph;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed graph document: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("malformed graph document: ") + ex.what());
  }
}

void write_json_file(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(1) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + ex.what());
  }
}

}  // namespace pcgplan
