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

#include "pcgplan/visibility/visibility.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pcgplan/errors.h"

namespace pcgplan {
namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}  // namespace

void SensorModel::validate() const {
  if (!(fov_diag_deg > 0.0 && fov_diag_deg < 180.0)) {
    throw ConfigError("fov_diag_deg must be in (0, 180)");
  }
  if (image_width <= 0 || image_height <= 0) {
    throw ConfigError("image dimensions must be positive");
  }
  if (!(max_view_angle_deg > 0.0 && max_view_angle_deg < 90.0)) {
    throw ConfigError("max_view_angle_deg must be in (0, 90)");
  }
  if (!(max_range > 0.0)) throw ConfigError("max_range must be positive");
}

FovHalfAngles derive_fov_half_angles(const SensorModel& sensor) {
  const double tan_d = std::tan(0.5 * sensor.fov_diag_deg * kDegToRad);
  const double w = sensor.image_width, h = sensor.image_height;
  const double diag = std::hypot(w, h);
  return {std::atan(tan_d * w / diag), std::atan(tan_d * h / diag)};
}

CameraFrame CameraFrame::from_pose(const Pose& pose) {
  static const double kVerticalCos = std::cos(1.0 * kDegToRad);
  CameraFrame f;
  f.position = pose.position;
  f.forward = pose.direction.normalized();
  const Vec3 world_up =
      std::abs(f.forward.z()) > kVerticalCos ? Vec3::UnitX() : Vec3::UnitZ();
  const Vec3 up = (world_up - world_up.dot(f.forward) * f.forward).normalized();
  f.down = -up;
  f.right = f.down.cross(f.forward);
  return f;
}

Eigen::Isometry3d CameraFrame::world_from_camera() const {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear().col(0) = right;
  t.linear().col(1) = down;
  t.linear().col(2) = forward;
  t.translation() = position;
  return t;
}

double default_occlusion_tolerance(double voxel_resolution) {
  return std::max(voxel_resolution / 10.0, 0.05);
}

VisibilityModel::VisibilityModel(const SurfacePatchSet& patches,
                                 const RayCaster& caster,
                                 const SensorModel& sensor,
                                 double occlusion_tolerance)
    : patches_(&patches),
      caster_(&caster),
      sensor_(sensor),
      occlusion_tolerance_(occlusion_tolerance) {
  sensor.validate();
  const FovHalfAngles fov = derive_fov_half_angles(sensor);
  tan_h_ = std::tan(fov.horizontal);
  tan_v_ = std::tan(fov.vertical);
  cos_max_angle_ = std::cos(sensor.max_view_angle_deg * kDegToRad);
}

bool VisibilityModel::sees(const CameraFrame& frame, std::size_t k) const {
  const SurfacePatch& patch = (*patches_)[k];
  const Vec3 c = patch.centroid - frame.position;
  const double dist2 = c.squaredNorm();
  // Range.
  if (dist2 > sensor_.max_range * sensor_.max_range || dist2 == 0.0) return false;
  const double dist = std::sqrt(dist2);
  // Viewing angle between the normal and the patch-to-camera vector.
  if (-patch.normal.dot(c) < cos_max_angle_ * dist) return false;
  // Field of view, per axis.
  const double fwd = frame.forward.dot(c);
  if (fwd <= 0.0) return false;
  if (std::abs(frame.right.dot(c)) > tan_h_ * fwd) return false;
  if (std::abs(frame.down.dot(c)) > tan_v_ * fwd) return false;
  // Occlusion.
  Ray ray;
  ray.origin = frame.position;
  ray.direction = c / dist;
  ray.max_distance = dist + occlusion_tolerance_;
  const auto hit = caster_->cast(ray);
  if (!hit) return false;
  if (hit->triangle == patch.triangle) return true;
  return std::abs(hit->distance - dist) <= occlusion_tolerance_;
}

bool VisibilityModel::pose_sees_patch(const Pose& pose, std::size_t patch) const {
  return sees(CameraFrame::from_pose(pose), patch);
}

void VisibilityModel::accumulate(const Pose& pose, VisibilityVector& bits) const {
  const CameraFrame frame = CameraFrame::from_pose(pose);
  const std::size_t m = patches_->size();
  for (std::size_t k = 0; k < m; ++k) {
    if (bits.test(k)) continue;
    if (sees(frame, k)) bits.set(k);
  }
}

VisibilityVector VisibilityModel::pose_visibility(const Pose& pose) const {
  VisibilityVector bits(patches_->size());
  accumulate(pose, bits);
  return bits;
}

VisibilityVector VisibilityModel::primitive_visibility(
    const PathPrimitive& primitive) const {
  VisibilityVector bits(patches_->size());
  for (const Pose& pose : primitive.poses) accumulate(pose, bits);
  return bits;
}

}  // namespace pcgplan
