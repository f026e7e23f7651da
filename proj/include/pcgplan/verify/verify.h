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

#ifndef PCGPLAN_VERIFY_VERIFY_H_
#define PCGPLAN_VERIFY_VERIFY_H_

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "pcgplan/bitset.h"
#include "pcgplan/geometry/mesh.h"
#include "pcgplan/geometry/patches.h"
#include "pcgplan/sampling/sampling.h"
#include "pcgplan/visibility/visibility.h"

namespace pcgplan {

struct RayGridSize {
  int cols = 320;
  int rows = 240;
};

struct ScanHit {
  Vec3 camera_point = Vec3::Zero();  // camera frame: x right, y down, z forward
  Vec3 world_point = Vec3::Zero();
  int triangle = -1;
  int patch = -1;  // -1 when no patch set was supplied
  double distance = 0.0;
};

struct SimulatedScan {
  Pose pose;
  CameraFrame frame;
  int cols = 0;
  int rows = 0;
  std::vector<std::optional<ScanHit>> hits;  // row-major, rows * cols

  std::size_t hit_count() const;
};

// Unit ray directions in the camera frame. Ray (i, j) points through tangent
// coordinates (-1 + 2i/cols) tan(theta_h), (-1 + 2j/rows) tan(theta_v), so a
// grid with twice the columns and rows contains every ray of the original.
std::vector<Vec3> camera_ray_directions(const SensorModel& sensor, RayGridSize grid);

// `patches` may be null, in which case hits carry no patch id.
SimulatedScan simulate_scan(const Pose& pose, const TriangleMesh& mesh,
                            const RayCaster& caster, const SurfacePatchSet* patches,
                            const SensorModel& sensor, RayGridSize grid);

// Sparse occupancy grid over accumulated hit points. Voxel (i, j, k) spans
// [i r, (i + 1) r) along each axis.
class OccupancyMap {
 public:
  struct Cell {
    Vec3 sum = Vec3::Zero();
    std::size_t hits = 0;
    Vec3 mean() const { return sum / static_cast<double>(hits); }
  };
  using Key = std::array<int, 3>;

  explicit OccupancyMap(double resolution = 0.5);

  void add(const Vec3& point);
  void merge(const OccupancyMap& other);
  Key key_of(const Vec3& point) const;
  double resolution() const { return resolution_; }
  std::size_t size() const { return cells_.size(); }
  const std::map<Key, Cell>& cells() const { return cells_; }
  // "x y z" voxel indices, one per line, ascending.
  void write(std::ostream& out) const;

 private:
  double resolution_;
  std::map<Key, Cell> cells_;
};

struct VerifyOptions {
  RayGridSize grid;
  double pose_spacing = 2.0;
  double occupancy_resolution = 0.5;
  bool keep_hit_points = false;
};

struct CoverageReport {
  double measured = 0.0;
  double planned = 0.0;
  DynamicBitset seen;
  OccupancyMap occupancy;
  double max_pose_spacing = 0.0;  // largest gap between consecutive poses
  std::size_t pose_count = 0;
  std::size_t ray_count = 0;
  std::size_t hit_count = 0;
  std::vector<Vec3> hit_points;  // only with keep_hit_points
};

// Scans every pose and marks a patch seen when some ray's first hit lies on
// it within range and within the viewing-angle limit.
CoverageReport verify_poses(std::span<const Pose> poses, const TriangleMesh& mesh,
                            const RayCaster& caster, const SurfacePatchSet& patches,
                            const SensorModel& sensor, const VerifyOptions& options);

// Samples poses along the walk through `walk_nodes` at options.pose_spacing,
// interpolating view directions per leg, then runs verify_poses.
CoverageReport verify_path(std::span<const Pose> walk_nodes, const TriangleMesh& mesh,
                           const RayCaster& caster, const SurfacePatchSet& patches,
                           const SensorModel& sensor, const VerifyOptions& options);

}  // namespace pcgplan

#endif  // PCGPLAN_VERIFY_VERIFY_H_
