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

#ifndef PCGPLAN_GEOMETRY_MESH_H_
#define PCGPLAN_GEOMETRY_MESH_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace pcgplan {

using Vec3 = Eigen::Vector3d;

struct Aabb {
  Vec3 min = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 max = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void extend(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void extend(const Aabb& b) {
    min = min.cwiseMin(b.min);
    max = max.cwiseMax(b.max);
  }
  bool valid() const { return (min.array() <= max.array()).all(); }
  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
};

using TriangleIndices = std::array<int, 3>;

// Triangle soup with shared vertices. Triangles with (near) zero area are
// dropped at construction and counted. Normals follow the right-hand rule on
// (v0, v1, v2) unless `flip_normals` is set.
class TriangleMesh {
 public:
  TriangleMesh() = default;
  TriangleMesh(std::vector<Vec3> vertices, std::vector<TriangleIndices> triangles,
               bool flip_normals = false);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<TriangleIndices>& triangles() const { return triangles_; }
  std::size_t num_triangles() const { return triangles_.size(); }
  bool empty() const { return triangles_.empty(); }

  const Vec3& vertex(std::size_t tri, int corner) const {
    return vertices_[triangles_[tri][corner]];
  }
  const Vec3& normal(std::size_t tri) const { return normals_[tri]; }
  double area(std::size_t tri) const { return areas_[tri]; }
  double surface_area() const;
  Aabb bounds() const;

  std::size_t dropped_degenerate() const { return dropped_degenerate_; }

 private:
  std::vector<Vec3> vertices_;
  std::vector<TriangleIndices> triangles_;
  std::vector<Vec3> normals_;
  std::vector<double> areas_;
  std::size_t dropped_degenerate_ = 0;
};

enum class MeshFormat { kAuto, kObj, kStlAscii, kStlBinary };

// Reads OBJ or STL (ASCII or binary). Polygon faces are fan-triangulated and
// STL vertices are welded on exact coordinate equality. Throws MeshError on
// unreadable files, parse failures, empty or all-degenerate meshes.
TriangleMesh load_mesh(const std::filesystem::path& path,
                       MeshFormat format = MeshFormat::kAuto,
                       bool flip_normals = false);

void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path);
void write_stl_binary(const TriangleMesh& mesh,
                      const std::filesystem::path& path);

// Closest point on triangle (a, b, c) to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c);

// Unsigned distance from p to the mesh surface, by exhaustive search.
double distance_to_mesh(const TriangleMesh& mesh, const Vec3& p);

// Euler characteristic V - E + F over referenced vertices and unique edges.
int euler_characteristic(const TriangleMesh& mesh);
// True iff every undirected edge is shared by exactly two triangles.
bool is_closed(const TriangleMesh& mesh);

}  // namespace pcgplan

#endif  // PCGPLAN_GEOMETRY_MESH_H_
