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

#include "pcgplan/io/export.h"

#include <array>
#include <fstream>
#include <memory>

#include <openssl/evp.h>
#include <spdlog/fmt/fmt.h>

#include "pcgplan/errors.h"
#include "pcgplan/pcg/graph_io.h"

namespace pcgplan {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 init failed");
  }
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), in.gcount());
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

json path_to_json(const PrimitiveCoverageGraph& graph, const InspectionPath& path,
                  const PathMeta& meta) {
  json doc;
  doc["format"] = kPathFormat;
  doc["version"] = kPathFormatVersion;
  doc["method"] = path.method;
  doc["manifest"] = meta.manifest;
  doc["mesh_sha256"] = meta.mesh_sha256;
  doc["patch_count"] = graph.patch_count();
  doc["length"] = path.length;
  doc["coverage"] = path.coverage;
  doc["coverage_target"] = meta.coverage_target;
  json nodes = json::array();
  for (int v : path.nodes) {
    const ViaPoint& vp = graph.node(v).via_point;
    nodes.push_back({{"id", v},
                     {"position", vec_to_json(vp.position)},
                     {"direction", vec_to_json(vp.direction)}});
  }
  doc["nodes"] = std::move(nodes);
  doc["edges"] = path.edges;
  json steps = json::array();
  for (const PathStep& s : path.steps) {
    steps.push_back({{"kind", step_kind_name(s.kind)},
                     {"edge", s.edge},
                     {"from", s.from},
                     {"to", s.to},
                     {"gain", s.gain},
                     {"cumulative_coverage", s.cumulative_coverage}});
  }
  doc["steps"] = std::move(steps);
  return doc;
}

PathDocument path_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kPathFormat) {
      throw ConfigError("not a pcgplan path document");
    }
    if (doc.at("version").get<int>() != kPathFormatVersion) {
      throw ConfigError("unsupported path format version");
    }
    PathDocument out;
    out.method = doc.at("method").get<std::string>();
    out.mesh_sha256 = doc.at("mesh_sha256").get<std::string>();
    out.manifest = doc.value("manifest", "");
    out.patch_count = doc.at("patch_count").get<std::size_t>();
    out.length = doc.at("length").get<double>();
    out.coverage = doc.at("coverage").get<double>();
    out.coverage_target = doc.at("coverage_target").get<double>();
    for (const json& n : doc.at("nodes")) {
      out.node_ids.push_back(n.at("id").get<int>());
      out.nodes.push_back(
          Pose{vec_from_json(n.at("position")), vec_from_json(n.at("direction"))});
    }
    out.edges = doc.at("edges").get<std::vector<int>>();
    for (const json& s : doc.value("steps", json::array())) {
      out.steps.push_back({parse_step_kind(s.at("kind").get<std::string>()),
                           s.at("edge").get<int>(), s.at("from").get<int>(),
                           s.at("to").get<int>(), s.at("gain").get<double>(),
                           s.at("cumulative_coverage").get<double>()});
    }
    return out;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed path document: ") + ex.what());
  }
}

void write_path_csv(std::span<const Pose> poses, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "x,y,z,dx,dy,dz\n";
  for (const Pose& p : poses) {
    out << fmt::format("{:.6f},{:.6f},{:.6f},{:.9f},{:.9f},{:.9f}\n", p.position.x(),
                       p.position.y(), p.position.z(), p.direction.x(),
                       p.direction.y(), p.direction.z());
  }
  finish(out, path);
}

void write_path_ply(std::span<const Pose> poses, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  const std::size_t segments = poses.empty() ? 0 : poses.size() - 1;
  out << "ply\nformat ascii 1.0\n"
      << "element vertex " << poses.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "element edge " << segments << "\n"
      << "property int vertex1\nproperty int vertex2\nend_header\n";
  for (const Pose& p : poses) {
    out << fmt::format("{:.6f} {:.6f} {:.6f}\n", p.position.x(), p.position.y(),
                       p.position.z());
  }
  for (std::size_t i = 0; i < segments; ++i) out << i << ' ' << i + 1 << '\n';
  finish(out, path);
}

void write_points_ply(std::span<const Vec3> points, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "ply\nformat ascii 1.0\n"
      << "element vertex " << points.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\nend_header\n";
  for (const Vec3& p : points) {
    out << fmt::format("{:.6f} {:.6f} {:.6f}\n", p.x(), p.y(), p.z());
  }
  finish(out, path);
}

void write_via_points_jsonl(std::span<const ViaPoint> via_points,
                            const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const ViaPoint& vp : via_points) {
    out << json{{"id", vp.id},
                {"position", vec_to_json(vp.position)},
                {"direction", vec_to_json(vp.direction)}}
               .dump()
        << '\n';
  }
  finish(out, path);
}

void write_primitives_jsonl(std::span<const PathPrimitive> primitives,
                            const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const PathPrimitive& p : primitives) {
    json poly = json::array();
    for (const Vec3& q : p.polyline) poly.push_back(vec_to_json(q));
    out << json{{"id", p.id},
                {"from", p.from},
                {"to", p.to},
                {"length", p.length},
                {"pose_count", p.poses.size()},
                {"polyline", std::move(poly)}}
               .dump()
        << '\n';
  }
  finish(out, path);
}

json report_to_json(const CoverageReport& report) {
  return {{"format", "pcgplan-coverage-report"},
          {"version", 1},
          {"measured_coverage", report.measured},
          {"planned_coverage", report.planned},
          {"patch_count", report.seen.size()},
          {"seen_count", report.seen.count()},
          {"seen", report.seen.to_hex()},
          {"pose_count", report.pose_count},
          {"ray_count", report.ray_count},
          {"hit_count", report.hit_count},
          {"max_pose_spacing", report.max_pose_spacing},
          {"occupancy_resolution", report.occupancy.resolution()},
          {"occupied_voxels", report.occupancy.size()}};
}

}  // namespace pcgplan
