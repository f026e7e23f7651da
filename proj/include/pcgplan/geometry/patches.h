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

#ifndef PCGPLAN_GEOMETRY_PATCHES_H_
#define PCGPLAN_GEOMETRY_PATCHES_H_

#include <cstddef>
#include <vector>

#include "pcgplan/geometry/mesh.h"

namespace pcgplan {

struct SurfacePatch {
  Vec3 centroid;
  Vec3 normal;
  double area = 0.0;
  int triangle = -1;
};

// Uniform subdivision of a mesh surface into small triangles. Patch index k
// in [0, size()) is the bit index used by every visibility vector.
//
// Each parent triangle t is split `levels(t)` times by 4-way midpoint
// subdivision. Its patches occupy the contiguous range starting at
// first_patch(t), ordered depth-first with children
// (corner a, corner b, corner c, center).
class SurfacePatchSet {
 public:
  SurfacePatchSet() = default;

  std::size_t size() const { return patches_.size(); }
  const SurfacePatch& operator[](std::size_t k) const { return patches_[k]; }
  const std::vector<SurfacePatch>& patches() const { return patches_; }

  int levels(std::size_t triangle) const { return levels_[triangle]; }
  int first_patch(std::size_t triangle) const { return first_[triangle]; }
  double total_area() const;
  double max_patch_area() const;

  // Patch of `triangle` containing `point`, which is expected to lie on the
  // triangle. Points slightly outside are clamped to the nearest child.
  int locate(const TriangleMesh& mesh, std::size_t triangle,
             const Vec3& point) const;

 private:
  friend SurfacePatchSet make_patches(const TriangleMesh& mesh,
                                      double max_area);
  std::vector<SurfacePatch> patches_;
  std::vector<int> levels_;
  std::vector<int> first_;
};

// Throws ConfigError unless max_area > 0.
SurfacePatchSet make_patches(const TriangleMesh& mesh, double max_area);

}  // namespace pcgplan

#endif  // PCGPLAN_GEOMETRY_PATCHES_H_
