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

#ifndef PCGPLAN_GEOMETRY_VOXEL_GRID_H_
#define PCGPLAN_GEOMETRY_VOXEL_GRID_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pcgplan/geometry/mesh.h"

namespace pcgplan {

using VoxelIndex = Eigen::Vector3i;

inline constexpr std::size_t kDefaultMaxVoxels = 200'000'000;

// Dense binary occupancy over an axis-aligned lattice. Voxel (i, j, k) spans
// [origin + r*(i,j,k), origin + r*(i+1,j+1,k+1)].
class VoxelGrid {
 public:
  VoxelGrid() = default;
  VoxelGrid(const Vec3& origin, double resolution, const std::array<int, 3>& dims);

  const Vec3& origin() const { return origin_; }
  double resolution() const { return resolution_; }
  const std::array<int, 3>& dims() const { return dims_; }
  std::size_t size() const { return cells_.size(); }

  bool in_bounds(int i, int j, int k) const {
    return i >= 0 && j >= 0 && k >= 0 && i < dims_[0] && j < dims_[1] &&
           k < dims_[2];
  }
  std::size_t linear(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * dims_[1] + j) * dims_[0] + i;
  }
  VoxelIndex unravel(std::size_t lin) const;

  bool occupied(int i, int j, int k) const { return cells_[linear(i, j, k)] != 0; }
  bool occupied(const VoxelIndex& v) const { return occupied(v.x(), v.y(), v.z()); }
  // Out-of-bounds queries read as free space.
  bool occupied_or_free(int i, int j, int k) const {
    return in_bounds(i, j, k) && occupied(i, j, k);
  }
  void set(int i, int j, int k, bool value = true) {
    cells_[linear(i, j, k)] = value ? 1 : 0;
  }

  Vec3 center(int i, int j, int k) const {
    return origin_ + resolution_ * Vec3(i + 0.5, j + 0.5, k + 0.5);
  }
  Vec3 center(const VoxelIndex& v) const { return center(v.x(), v.y(), v.z()); }
  Vec3 min_corner(const VoxelIndex& v) const {
    return origin_ + resolution_ * v.cast<double>();
  }
  // Voxel containing p, or nullopt outside the grid.
  std::optional<VoxelIndex> voxel_of(const Vec3& p) const;

  std::size_t occupied_count() const;
  // Occupied voxels in linear (x fastest) order.
  std::vector<VoxelIndex> occupied_voxels() const;

  const std::vector<uint8_t>& cells() const { return cells_; }

 private:
  Vec3 origin_ = Vec3::Zero();
  double resolution_ = 1.0;
  std::array<int, 3> dims_{1, 1, 1};
  std::vector<uint8_t> cells_ = std::vector<uint8_t>(1, 0);
};

struct VoxelizeOptions {
  // Mark voxels enclosed by the surface shell (6-connected flood from outside).
  bool fill_interior = false;
  std::size_t max_voxels = kDefaultMaxVoxels;
};

// Conservative surface voxelization: a voxel is occupied iff its closed cube
// intersects a triangle. The grid origin is the mesh bounding-box minimum.
VoxelGrid voxelize(const TriangleMesh& mesh, double resolution,
                   const VoxelizeOptions& options = {});

// Euclidean dilation on voxel centers. The output grid grows by ceil(d/r)
// voxels on every side.
VoxelGrid dilate(const VoxelGrid& grid, double distance,
                 std::size_t max_voxels = kDefaultMaxVoxels);

// Occupied in a and not in b, expressed in a's frame. Both grids must share
// resolution and lattice alignment.
VoxelGrid subtract(const VoxelGrid& a, const VoxelGrid& b);

struct Segment {
  Vec3 start;
  Vec3 end;
};

// True iff the voxel traversal of the segment touches no occupied voxel.
// Space outside the grid is free.
bool segment_clear(const VoxelGrid& grid, const Segment& segment);

// Closed cube / triangle overlap (separating axis test).
bool triangle_box_overlap(const Vec3& box_center, const Vec3& half_size,
                          const Vec3& a, const Vec3& b, const Vec3& c);

// One "x y z" line per occupied voxel, in linear order.
void write_voxel_list(const VoxelGrid& grid, std::ostream& out);

}  // namespace pcgplan

#endif  // PCGPLAN_GEOMETRY_VOXEL_GRID_H_
