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

#include "pcgplan/verify/verify.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "pcgplan/errors.h"
#include "pcgplan/parallel.h"

namespace pcgplan {
namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
constexpr std::size_t kChunk = 32;

}  // namespace

std::size_t SimulatedScan::hit_count() const {
  return static_cast<std::size_t>(
      std::count_if(hits.begin(), hits.end(), [](const auto& h) { return h.has_value(); }));
}

std::vector<Vec3> camera_ray_directions(const SensorModel& sensor, RayGridSize grid) {
  if (grid.cols < 1 || grid.rows < 1) throw ConfigError("ray grid must be at least 1x1");
  const FovHalfAngles fov = derive_fov_half_angles(sensor);
  const double th = std::tan(fov.horizontal);
  const double tv = std::tan(fov.vertical);
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<std::size_t>(grid.cols) * grid.rows);
  for (int j = 0; j < grid.rows; ++j) {
    const double y = (-1.0 + 2.0 * j / grid.rows) * tv;
    for (int i = 0; i < grid.cols; ++i) {
      const double x = (-1.0 + 2.0 * i / grid.cols) * th;
      dirs.push_back(Vec3(x, y, 1.0).normalized());
    }
  }
  return dirs;
}

SimulatedScan simulate_scan(const Pose& pose, const TriangleMesh& mesh,
                            const RayCaster& caster, const SurfacePatchSet* patches,
                            const SensorModel& sensor, RayGridSize grid) {
  SimulatedScan scan;
  scan.pose = pose;
  scan.frame = CameraFrame::from_pose(pose);
  scan.cols = grid.cols;
  scan.rows = grid.rows;
  const Eigen::Isometry3d world_from_cam = scan.frame.world_from_camera();
  const std::vector<Vec3> dirs = camera_ray_directions(sensor, grid);
  scan.hits.resize(dirs.size());
  for (std::size_t r = 0; r < dirs.size(); ++r) {
    Ray ray;
    ray.origin = pose.position;
    ray.direction = world_from_cam.linear() * dirs[r];
    ray.max_distance = sensor.max_range;
    const auto hit = caster.cast(ray);
    if (!hit) continue;
    ScanHit h;
    h.distance = hit->distance;
    h.triangle = hit->triangle;
    h.camera_point = dirs[r] * hit->distance;
    h.world_point = world_from_cam * h.camera_point;
    if (patches != nullptr) h.patch = patches->locate(mesh, hit->triangle, h.world_point);
    scan.hits[r] = h;
  }
  return scan;
}

OccupancyMap::OccupancyMap(double resolution) : resolution_(resolution) {
  if (!(resolution > 0.0)) throw ConfigError("occupancy resolution must be positive");
}

OccupancyMap::Key OccupancyMap::key_of(const Vec3& p) const {
  return {static_cast<int>(std::floor(p.x() / resolution_)),
          static_cast<int>(std::floor(p.y() / resolution_)),
          static_cast<int>(std::floor(p.z() / resolution_))};
}

void OccupancyMap::add(const Vec3& point) {
  Cell& c = cells_[key_of(point)];
  c.sum += point;
  ++c.hits;
}

void OccupancyMap::merge(const OccupancyMap& other) {
  for (const auto& [key, cell] : other.cells_) {
    Cell& c = cells_[key];
    c.sum += cell.sum;
    c.hits += cell.hits;
  }
}

void OccupancyMap::write(std::ostream& out) const {
  // Sort by (z, y, x) to match VoxelGrid's linear order.
  std::vector<Key> keys;
  keys.reserve(cells_.size());
  for (const auto& [key, cell] : cells_) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a[2], a[1], a[0]) < std::tie(b[2], b[1], b[0]);
  });
  for (const Key& k : keys) out << k[0] << ' ' << k[1] << ' ' << k[2] << '\n';
}

CoverageReport verify_poses(std::span<const Pose> poses, const TriangleMesh& mesh,
                            const RayCaster& caster, const SurfacePatchSet& patches,
                            const SensorModel& sensor, const VerifyOptions& options) {
  sensor.validate();
  const std::size_t m = patches.size();
  const double cos_max = std::cos(sensor.max_view_angle_deg * kDegToRad);
  CoverageReport report;
  report.seen = DynamicBitset(m);
  report.occupancy = OccupancyMap(options.occupancy_resolution);
  report.pose_count = poses.size();
  for (std::size_t i = 1; i < poses.size(); ++i) {
    report.max_pose_spacing = std::max(
        report.max_pose_spacing, (poses[i].position - poses[i - 1].position).norm());
  }

  struct PoseResult {
    DynamicBitset seen;
    OccupancyMap occupancy;
    std::size_t rays = 0;
    std::size_t hits = 0;
    std::vector<Vec3> points;
  };
  for (std::size_t begin = 0; begin < poses.size(); begin += kChunk) {
    const std::size_t end = std::min(poses.size(), begin + kChunk);
    std::vector<PoseResult> results(end - begin);
    parallel_for(end - begin, [&](std::size_t idx) {
      const Pose& pose = poses[begin + idx];
      PoseResult& out = results[idx];
      out.seen = DynamicBitset(m);
      out.occupancy = OccupancyMap(options.occupancy_resolution);
      const SimulatedScan scan =
          simulate_scan(pose, mesh, caster, &patches, sensor, options.grid);
      out.rays = scan.hits.size();
      for (const auto& hit : scan.hits) {
        if (!hit) continue;
        ++out.hits;
        out.occupancy.add(hit->world_point);
        if (options.keep_hit_points) out.points.push_back(hit->world_point);
        if (hit->distance > sensor.max_range) continue;
        const Vec3 to_camera = pose.position - hit->world_point;
        const Vec3& n = mesh.normal(hit->triangle);
        if (n.dot(to_camera) < cos_max * to_camera.norm()) continue;
        out.seen.set(static_cast<std::size_t>(hit->patch));
      }
    });
    for (PoseResult& r : results) {
      report.seen.merge(r.seen);
      report.occupancy.merge(r.occupancy);
      report.ray_count += r.rays;
      report.hit_count += r.hits;
      report.hit_points.insert(report.hit_points.end(), r.points.begin(), r.points.end());
    }
  }
  if (m > 0) report.measured = static_cast<double>(report.seen.count()) / m;
  return report;
}

CoverageReport verify_path(std::span<const Pose> walk_nodes, const TriangleMesh& mesh,
                           const RayCaster& caster, const SurfacePatchSet& patches,
                           const SensorModel& sensor, const VerifyOptions& options) {
  if (!(options.pose_spacing > 0.0)) throw ConfigError("verify pose spacing must be positive");
  const std::vector<Pose> poses = sample_walk_poses(walk_nodes, options.pose_spacing);
  return verify_poses(poses, mesh, caster, patches, sensor, options);
}

}  // namespace pcgplan
