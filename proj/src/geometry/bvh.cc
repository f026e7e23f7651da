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

#include "pcgplan/geometry/bvh.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pcgplan {
namespace {

inline bool better(double t, int tri, double best_t, int best_tri) {
  return t < best_t || (t == best_t && tri < best_tri);
}

// Entry distance of the ray into the box, or +inf on a miss.
inline double slab_entry(const Aabb& box, const Vec3& origin, const Vec3& dir,
                         const Vec3& inv_dir, double t_max) {
  constexpr double kMiss = std::numeric_limits<double>::infinity();
  double t0 = 0.0, t1 = t_max;
  for (int a = 0; a < 3; ++a) {
    if (dir[a] == 0.0) {
      if (origin[a] < box.min[a] || origin[a] > box.max[a]) return kMiss;
      continue;
    }
    double ta = (box.min[a] - origin[a]) * inv_dir[a];
    double tb = (box.max[a] - origin[a]) * inv_dir[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return kMiss;
  }
  return t0;
}

}  // namespace

std::optional<double> intersect_triangle(const Ray& ray, const Vec3& v0,
                                         const Vec3& v1, const Vec3& v2) {
  const Vec3 e1 = v1 - v0;
  const Vec3 e2 = v2 - v0;
  const Vec3 p = ray.direction.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < 1e-14 * e1.norm() * e2.norm()) return std::nullopt;
  const double inv_det = 1.0 / det;
  const Vec3 s = ray.origin - v0;
  const double u = s.dot(p) * inv_det;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Vec3 q = s.cross(e1);
  const double v = ray.direction.dot(q) * inv_det;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  const double t = e2.dot(q) * inv_det;
  if (t <= kRayEpsilon || t > ray.max_distance) return std::nullopt;
  return t;
}

std::optional<RayHit> intersect_brute_force(const TriangleMesh& mesh,
                                            const Ray& ray) {
  std::optional<RayHit> best;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto hit = intersect_triangle(ray, mesh.vertex(t, 0), mesh.vertex(t, 1),
                                        mesh.vertex(t, 2));
    if (!hit) continue;
    const int tri = static_cast<int>(t);
    if (!best || better(*hit, tri, best->distance, best->triangle)) {
      best = RayHit{tri, *hit};
    }
  }
  return best;
}

Bvh::Bvh(const TriangleMesh& mesh, int max_leaf_size) {
  const int n = static_cast<int>(mesh.num_triangles());
  if (n == 0) return;
  tri_index_.resize(n);
  std::iota(tri_index_.begin(), tri_index_.end(), 0);
  std::vector<Vec3> centroids(n);
  for (int t = 0; t < n; ++t) {
    centroids[t] = (mesh.vertex(t, 0) + mesh.vertex(t, 1) + mesh.vertex(t, 2)) / 3.0;
  }
  tri_verts_.resize(n);
  for (int t = 0; t < n; ++t) {
    tri_verts_[t] = {mesh.vertex(t, 0), mesh.vertex(t, 1), mesh.vertex(t, 2)};
  }
  nodes_.reserve(2 * n);
  build(0, n, centroids, std::max(1, max_leaf_size));
  // Reorder vertex copies to leaf order.
  std::vector<std::array<Vec3, 3>> ordered(n);
  for (int i = 0; i < n; ++i) ordered[i] = tri_verts_[tri_index_[i]];
  tri_verts_ = std::move(ordered);
}

int Bvh::build(int begin, int end, std::vector<Vec3>& centroids, int max_leaf) {
  const int node_id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Aabb box, cbox;
  for (int i = begin; i < end; ++i) {
    for (const Vec3& v : tri_verts_[tri_index_[i]]) box.extend(v);
    cbox.extend(centroids[tri_index_[i]]);
  }
  // Pad so rounding in the slab test never rejects a box the exact
  // triangle test would hit (flat boxes of axis-aligned faces).
  const Vec3 pad = Vec3::Constant(1e-9) + 1e-9 * box.min.cwiseAbs().cwiseMax(box.max.cwiseAbs());
  box.min -= pad;
  box.max += pad;
  nodes_[node_id].box = box;
  const int count = end - begin;
  int axis;
  cbox.extent().maxCoeff(&axis);
  if (count <= max_leaf || cbox.extent()[axis] <= 0.0) {
    nodes_[node_id].first = begin;
    nodes_[node_id].count = count;
    return node_id;
  }
  const int mid = begin + count / 2;
  std::nth_element(tri_index_.begin() + begin, tri_index_.begin() + mid,
                   tri_index_.begin() + end, [&](int a, int b) {
                     const double ca = centroids[a][axis], cb = centroids[b][axis];
                     return ca < cb || (ca == cb && a < b);
                   });
  build(begin, mid, centroids, max_leaf);
  const int right = build(mid, end, centroids, max_leaf);
  nodes_[node_id].first = right;
  nodes_[node_id].count = 0;
  return node_id;
}

std::optional<RayHit> Bvh::intersect(const Ray& ray) const {
  if (nodes_.empty()) return std::nullopt;
  const Vec3 inv_dir = ray.direction.cwiseInverse();
  double best_t = std::numeric_limits<double>::infinity();
  int best_tri = -1;

  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const int id = stack[--top];
    const Node& node = nodes_[id];
    const double entry = slab_entry(node.box, ray.origin, ray.direction, inv_dir,
                                    std::min(ray.max_distance, best_t));
    if (entry == std::numeric_limits<double>::infinity() || entry > best_t) continue;
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const auto& v = tri_verts_[i];
        const auto hit = intersect_triangle(ray, v[0], v[1], v[2]);
        if (hit && better(*hit, tri_index_[i], best_t, best_tri)) {
          best_t = *hit;
          best_tri = tri_index_[i];
        }
      }
      continue;
    }
    const int left = id + 1, right = node.first;
    // Visit the nearer child first.
    const double el = slab_entry(nodes_[left].box, ray.origin, ray.direction, inv_dir, best_t);
    const double er = slab_entry(nodes_[right].box, ray.origin, ray.direction, inv_dir, best_t);
    if (el <= er) {
      stack[top++] = right;
      stack[top++] = left;
    } else {
      stack[top++] = left;
      stack[top++] = right;
    }
  }
  if (best_tri < 0) return std::nullopt;
  return RayHit{best_tri, best_t};
}

}  // namespace pcgplan
