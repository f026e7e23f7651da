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

#include "pcgplan/cli/structures.h"

#include "pcgplan/errors.h"

namespace pcgplan {
namespace {

struct RawMesh {
  std::vector<Vec3> vertices;
  std::vector<TriangleIndices> triangles;

  void append(const RawMesh& other, bool flip) {
    const int base = static_cast<int>(vertices.size());
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    for (TriangleIndices t : other.triangles) {
      if (flip) std::swap(t[1], t[2]);
      triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
    }
  }
};

RawMesh raw_box(const Vec3& lo, const Vec3& hi) {
  RawMesh m;
  for (int k = 0; k < 8; ++k) {
    m.vertices.emplace_back((k & 1) ? hi.x() : lo.x(), (k & 2) ? hi.y() : lo.y(),
                            (k & 4) ? hi.z() : lo.z());
  }
  // Counter-clockwise seen from outside.
  m.triangles = {{0, 2, 1}, {1, 2, 3},   // z = lo
                 {4, 5, 6}, {5, 7, 6},   // z = hi
                 {0, 1, 4}, {1, 5, 4},   // y = lo
                 {2, 6, 3}, {3, 6, 7},   // y = hi
                 {0, 4, 2}, {2, 4, 6},   // x = lo
                 {1, 3, 5}, {3, 7, 5}};  // x = hi
  return m;
}

RawMesh raw_extrusion(const std::vector<Eigen::Vector2d>& poly, double height) {
  const int n = static_cast<int>(poly.size());
  RawMesh m;
  for (const auto& p : poly) m.vertices.emplace_back(p.x(), p.y(), 0.0);
  for (const auto& p : poly) m.vertices.emplace_back(p.x(), p.y(), height);
  for (int i = 1; i + 1 < n; ++i) {
    m.triangles.push_back({0, i + 1, i});              // bottom, facing -z
    m.triangles.push_back({n, n + i, n + i + 1});      // top, facing +z
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    m.triangles.push_back({i, j, n + j});
    m.triangles.push_back({i, n + j, n + i});
  }
  return m;
}

void require_dims(const std::vector<double>& dims, std::size_t count, const char* kind) {
  if (dims.size() != count) {
    throw ConfigError(std::string(kind) + " needs " + std::to_string(count) + " dimensions");
  }
  for (double d : dims) {
    if (!(d > 0.0)) throw ConfigError(std::string(kind) + " dimensions must be positive");
  }
}

}  // namespace

StructureKind parse_structure_kind(const std::string& name) {
  if (name == "box") return StructureKind::kBox;
  if (name == "l-shape") return StructureKind::kLShape;
  if (name == "tower+annex" || name == "tower-annex") return StructureKind::kTowerAnnex;
  if (name == "cavity") return StructureKind::kCavity;
  throw ConfigError("unknown structure '" + name + "'");
}

const char* structure_kind_name(StructureKind kind) {
  switch (kind) {
    case StructureKind::kBox:
      return "box";
    case StructureKind::kLShape:
      return "l-shape";
    case StructureKind::kTowerAnnex:
      return "tower+annex";
    case StructureKind::kCavity:
      return "cavity";
  }
  return "?";
}

TriangleMesh make_box(const Vec3& min, const Vec3& max) {
  RawMesh m = raw_box(min, max);
  return TriangleMesh(std::move(m.vertices), std::move(m.triangles));
}

TriangleMesh extrude_polygon(const std::vector<Eigen::Vector2d>& polygon, double height) {
  if (polygon.size() < 3) throw ConfigError("polygon needs at least 3 vertices");
  RawMesh m = raw_extrusion(polygon, height);
  return TriangleMesh(std::move(m.vertices), std::move(m.triangles));
}

double signed_volume(const TriangleMesh& mesh) {
  double v = 0.0;
  for (std::size_t t = 0; t < mesh.triangles().size(); ++t) {
    const auto& tri = mesh.triangles()[t];
    v += mesh.vertices()[tri[0]].dot(
        mesh.vertices()[tri[1]].cross(mesh.vertices()[tri[2]]));
  }
  return v / 6.0;
}

TriangleMesh make_structure(StructureKind kind, const std::vector<double>& dims) {
  using V2 = Eigen::Vector2d;
  switch (kind) {
    case StructureKind::kBox: {
      const std::vector<double> d = dims.empty() ? std::vector<double>{20, 20, 30} : dims;
      require_dims(d, 3, "box");
      return make_box(Vec3::Zero(), Vec3(d[0], d[1], d[2]));
    }
    case StructureKind::kLShape: {
      const std::vector<double> d =
          dims.empty() ? std::vector<double>{30, 30, 20, 12} : dims;
      require_dims(d, 4, "l-shape");
      if (!(d[3] < d[0] && d[3] < d[1])) {
        throw ConfigError("l-shape thickness must be below both footprint sides");
      }
      return extrude_polygon({V2(0, 0), V2(d[0], 0), V2(d[0], d[3]), V2(d[3], d[3]),
                              V2(d[3], d[1]), V2(0, d[1])},
                             d[2]);
    }
    case StructureKind::kTowerAnnex: {
      const std::vector<double> d =
          dims.empty() ? std::vector<double>{12, 12, 40, 20, 12} : dims;
      require_dims(d, 5, "tower+annex");
      if (!(d[4] < d[2])) throw ConfigError("annex must be lower than the tower");
      // Side profile in (x, z), extruded along y.
      RawMesh prof = raw_extrusion({V2(0, 0), V2(d[0] + d[3], 0), V2(d[0] + d[3], d[4]),
                                    V2(d[0], d[4]), V2(d[0], d[2]), V2(0, d[2])},
                                   d[1]);
      for (Vec3& v : prof.vertices) v = Vec3(v.x(), v.z(), v.y());
      // Swapping y and z mirrors the mesh, so reverse the winding.
      for (auto& t : prof.triangles) std::swap(t[1], t[2]);
      return TriangleMesh(std::move(prof.vertices), std::move(prof.triangles));
    }
    case StructureKind::kCavity: {
      const std::vector<double> d = dims.empty() ? std::vector<double>{10, 4} : dims;
      require_dims(d, 2, "cavity");
      if (!(d[1] < d[0])) throw ConfigError("cavity must be smaller than the outer cube");
      RawMesh m = raw_box(Vec3::Zero(), Vec3::Constant(d[0]));
      const double lo = (d[0] - d[1]) / 2.0;
      m.append(raw_box(Vec3::Constant(lo), Vec3::Constant(lo + d[1])), /*flip=*/true);
      return TriangleMesh(std::move(m.vertices), std::move(m.triangles));
    }
  }
  throw ConfigError("unknown structure");
}

}  // namespace pcgplan
