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

#ifndef PCGPLAN_SAMPLING_SAMPLING_H_
#define PCGPLAN_SAMPLING_SAMPLING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcgplan/geometry/mesh.h"
#include "pcgplan/geometry/patches.h"
#include "pcgplan/geometry/voxel_grid.h"

namespace pcgplan {

// Camera position plus unit optical axis.
struct Pose {
  Vec3 position = Vec3::Zero();
  Vec3 direction = Vec3::UnitX();
};

struct ViaPoint {
  int id = -1;
  Vec3 position = Vec3::Zero();
  Vec3 direction = Vec3::UnitX();  // points toward the structure

  Pose pose() const { return {position, direction}; }
};

struct PathPrimitive {
  int id = -1;
  int from = -1;  // via-point id, from < to
  int to = -1;
  std::vector<Vec3> polyline;
  double length = 0.0;
  std::vector<Pose> poses;  // includes both endpoint poses
};

struct SamplingParams {
  int num_via_points = 300;
  double pair_distance = 25.0;   // max via-point separation for a primitive
  double field_range = 50.0;     // potential-field radius
  double max_range = 50.0;       // sensor viewing range d_vis
  double safety_distance = 2.0;  // d_safe
  double pose_spacing = 2.0;     // max distance between sampled poses
  uint64_t seed = 1;

  // Throws ConfigError on violated constraints (0 < d_safe < d_vis, ...).
  void validate() const;
};

// Endpoint directions closer than this to antipodal are rejected.
inline constexpr double kMaxEndpointAngleDeg = 175.0;

struct SamplingGrids {
  VoxelGrid structure;  // voxelized mesh
  VoxelGrid safety;     // structure dilated by d_safe
  VoxelGrid region;     // dilate(d_vis) minus dilate(d_safe)
};

// Throws EmptyRegionError when the shell has no voxels.
SamplingGrids build_sampling_grids(const TriangleMesh& mesh,
                                   const SamplingParams& params, double resolution,
                                   const VoxelizeOptions& options = {});
VoxelGrid build_sampling_region(const TriangleMesh& mesh,
                                const SamplingParams& params, double resolution,
                                const VoxelizeOptions& options = {});

// Potential-field viewing direction at p: the negated, normalized sum of
// (p - c) / |p - c|^3 over patch centroids c closer than field_range. Falls
// back to aiming at the nearest centroid when no patch is in range.
Vec3 compute_view_direction(const Vec3& p, const SurfacePatchSet& patches,
                            double field_range);

// n_vp via-points, each uniform inside a uniformly drawn region voxel. Each
// point draws from its own generator derived from (seed, index), so the
// result does not depend on the worker count.
std::vector<ViaPoint> sample_via_points(const VoxelGrid& region,
                                        const SurfacePatchSet& patches,
                                        const SamplingParams& params);

// Linear blend of endpoint directions at fraction t in [0, 1], renormalized.
// Exact endpoint directions at t = 0 and t = 1. nullopt when the blend
// passes within 1e-6 of zero length.
std::optional<Vec3> interpolate_direction(const Vec3& start, const Vec3& end,
                                          double t);
// Pose at p_t on the segment between the endpoint poses, with t taken as
// |p_t - p_s| / |p_e - p_s|.
std::optional<Pose> interpolate_pose(const Pose& start, const Pose& end,
                                     const Vec3& p_t);

// Connects two positions with a collision-free polyline, or fails.
class LocalPlanner {
 public:
  virtual ~LocalPlanner() = default;
  virtual std::optional<std::vector<Vec3>> connect(const Vec3& from,
                                                   const Vec3& to) const = 0;
};

// Straight segment, accepted iff it stays clear of the safety grid.
class StraightLinePlanner : public LocalPlanner {
 public:
  explicit StraightLinePlanner(const VoxelGrid& safety) : safety_(&safety) {}
  std::optional<std::vector<Vec3>> connect(const Vec3& from,
                                           const Vec3& to) const override;

 private:
  const VoxelGrid* safety_;
};

// Builds the primitive for (a, b) along `polyline`, sampling poses at most
// `spacing` apart. nullopt for zero length or near-antipodal directions.
std::optional<PathPrimitive> make_primitive(const ViaPoint& a, const ViaPoint& b,
                                            std::vector<Vec3> polyline,
                                            double spacing);

// Every unordered pair within pair_distance that the planner connects.
// Primitive ids follow (from, to) lexicographic order.
std::vector<PathPrimitive> sample_primitives(std::span<const ViaPoint> via_points,
                                             const LocalPlanner& planner,
                                             const SamplingParams& params);
std::vector<PathPrimitive> sample_primitives(std::span<const ViaPoint> via_points,
                                             const VoxelGrid& safety,
                                             const SamplingParams& params);

// Poses along a walk through `nodes` (straight legs), spaced at most
// `spacing` apart with interpolated directions.
std::vector<Pose> sample_walk_poses(std::span<const Pose> nodes, double spacing);

}  // namespace pcgplan

#endif  // PCGPLAN_SAMPLING_SAMPLING_H_
