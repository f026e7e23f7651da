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

#ifndef PCGPLAN_VISIBILITY_VISIBILITY_H_
#define PCGPLAN_VISIBILITY_VISIBILITY_H_

#include <optional>

#include "pcgplan/bitset.h"
#include "pcgplan/geometry/bvh.h"
#include "pcgplan/geometry/mesh.h"
#include "pcgplan/geometry/patches.h"
#include "pcgplan/sampling/sampling.h"

namespace pcgplan {

using VisibilityVector = DynamicBitset;

struct SensorModel {
  double fov_diag_deg = 94.0;
  int image_width = 4000;
  int image_height = 3000;
  double max_view_angle_deg = 75.0;  // between patch normal and patch->camera
  double max_range = 50.0;

  void validate() const;
};

// Half-angles of the rectangular frustum, radians.
struct FovHalfAngles {
  double horizontal = 0.0;
  double vertical = 0.0;
};

// Pinhole split of the diagonal field of view by image aspect:
// tan(h) = tan(d) * w / sqrt(w^2 + h^2), likewise for the vertical axis.
FovHalfAngles derive_fov_half_angles(const SensorModel& sensor);

// Camera axes in world coordinates, OpenCV convention: x right, y down,
// z forward (the optical axis). Zero roll: "up" is world z projected off the
// optical axis, or world x when the axis is within 1 degree of vertical.
struct CameraFrame {
  Vec3 position = Vec3::Zero();
  Vec3 right = Vec3::UnitX();
  Vec3 down = -Vec3::UnitZ();
  Vec3 forward = Vec3::UnitY();

  static CameraFrame from_pose(const Pose& pose);
  // T_world_cam: maps camera-frame points into the world frame.
  Eigen::Isometry3d world_from_camera() const;
};

// Nearest-hit ray queries against the target mesh.
class RayCaster {
 public:
  virtual ~RayCaster() = default;
  virtual std::optional<RayHit> cast(const Ray& ray) const = 0;
};

class BvhRayCaster : public RayCaster {
 public:
  explicit BvhRayCaster(const TriangleMesh& mesh) : bvh_(mesh) {}
  std::optional<RayHit> cast(const Ray& ray) const override {
    return bvh_.intersect(ray);
  }
  const Bvh& bvh() const { return bvh_; }

 private:
  Bvh bvh_;
};

// Exhaustive triangle loop; reference for checking the BVH path.
class BruteForceRayCaster : public RayCaster {
 public:
  explicit BruteForceRayCaster(const TriangleMesh& mesh) : mesh_(&mesh) {}
  std::optional<RayHit> cast(const Ray& ray) const override {
    return intersect_brute_force(*mesh_, ray);
  }

 private:
  const TriangleMesh* mesh_;
};

// Hit-point tolerance for the occlusion test: max(r / 10, 5 cm).
double default_occlusion_tolerance(double voxel_resolution);

// Binary camera/patch visibility. A pose sees a patch iff its centroid is
// inside the rectangular frustum, within max range, viewed at no more than
// the max viewing angle, and the ray toward the centroid first hits the
// patch's own triangle (or lands within the occlusion tolerance of the
// centroid).
class VisibilityModel {
 public:
  VisibilityModel(const SurfacePatchSet& patches, const RayCaster& caster,
                  const SensorModel& sensor, double occlusion_tolerance);

  bool pose_sees_patch(const Pose& pose, std::size_t patch) const;
  // Sets bit k of `bits` for every patch visible from `pose`. Bits already
  // set are not re-evaluated.
  void accumulate(const Pose& pose, VisibilityVector& bits) const;
  VisibilityVector pose_visibility(const Pose& pose) const;
  // OR over the primitive's sampled poses.
  VisibilityVector primitive_visibility(const PathPrimitive& primitive) const;

  std::size_t patch_count() const { return patches_->size(); }
  const SensorModel& sensor() const { return sensor_; }

 private:
  bool sees(const CameraFrame& frame, std::size_t patch) const;

  const SurfacePatchSet* patches_;
  const RayCaster* caster_;
  SensorModel sensor_;
  double tan_h_;
  double tan_v_;
  double cos_max_angle_;
  double occlusion_tolerance_;
};

}  // namespace pcgplan

#endif  // PCGPLAN_VISIBILITY_VISIBILITY_H_
