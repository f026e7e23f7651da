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

#ifndef PCGPLAN_GEOMETRY_BVH_H_
#define PCGPLAN_GEOMETRY_BVH_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pcgplan/geometry/mesh.h"

namespace pcgplan {

struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitX();  // unit length
  double max_distance = std::numeric_limits<double>::infinity();
};

struct RayHit {
  int triangle = -1;
  double distance = 0.0;
};

// Hits closer than this along the ray are ignored (self-intersection guard).
inline constexpr double kRayEpsilon = 1e-9;

// Two-sided Moller-Trumbore test. Returns the ray parameter on a hit within
// (kRayEpsilon, max_distance].
std::optional<double> intersect_triangle(const Ray& ray, const Vec3& v0,
                                         const Vec3& v1, const Vec3& v2);

// Nearest hit by testing every triangle. Ties on distance go to the lower
// triangle index.
std::optional<RayHit> intersect_brute_force(const TriangleMesh& mesh,
                                            const Ray& ray);

// Binary bounding volume hierarchy over a mesh's triangles, split at the
// centroid median of the widest axis. Owns a copy of the triangle vertices, so
// it stays valid independently of the source mesh. Queries are const and
// thread-safe.
class Bvh {
 public:
  Bvh() = default;
  explicit Bvh(const TriangleMesh& mesh, int max_leaf_size = 4);

  // Same result as intersect_brute_force, including tie-breaking.
  std::optional<RayHit> intersect(const Ray& ray) const;

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_triangles() const { return tri_index_.size(); }

 private:
  struct Node {
    Aabb box;
    int32_t first = 0;  // first triangle (leaf) or right child (inner)
    int32_t count = 0;  // triangle count; 0 for inner nodes
  };
  int build(int begin, int end, std::vector<Vec3>& centroids, int max_leaf);

  std::vector<Node> nodes_;
  std::vector<int> tri_index_;
  std::vector<std::array<Vec3, 3>> tri_verts_;
};

// Nearest triangle hit along a unit-direction ray.
inline std::optional<RayHit> ray_hit(const Bvh& bvh, const Ray& ray) {
  return bvh.intersect(ray);
}

}  // namespace pcgplan

#endif  // PCGPLAN_GEOMETRY_BVH_H_
