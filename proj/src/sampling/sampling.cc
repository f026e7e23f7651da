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

#include "pcgplan/sampling/sampling.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pcgplan/errors.h"
#include "pcgplan/parallel.h"

namespace pcgplan {
namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace

void SamplingParams::validate() const {
  if (num_via_points < 2) throw ConfigError("num_via_points must be >= 2");
  if (!(safety_distance > 0.0)) throw ConfigError("safety_distance must be > 0");
  if (!(safety_distance < max_range)) {
    throw ConfigError("safety_distance must be smaller than max_range");
  }
  if (!(pair_distance > 0.0)) throw ConfigError("pair_distance must be > 0");
  if (!(field_range > 0.0)) throw ConfigError("field_range must be > 0");
  if (!(pose_spacing > 0.0)) throw ConfigError("pose_spacing must be > 0");
}

SamplingGrids build_sampling_grids(const TriangleMesh& mesh,
                                   const SamplingParams& params, double resolution,
                                   const VoxelizeOptions& options) {
  params.validate();
  SamplingGrids grids;
  grids.structure = voxelize(mesh, resolution, options);
  grids.safety = dilate(grids.structure, params.safety_distance, options.max_voxels);
  const VoxelGrid reach = dilate(grids.structure, params.max_range, options.max_voxels);
  grids.region = subtract(reach, grids.safety);
  if (grids.region.occupied_count() == 0) {
    throw EmptyRegionError(
        "sampling region is empty; safety distance too close to viewing range "
        "for the voxel resolution");
  }
  return grids;
}

VoxelGrid build_sampling_region(const TriangleMesh& mesh,
                                const SamplingParams& params, double resolution,
                                const VoxelizeOptions& options) {
  return build_sampling_grids(mesh, params, resolution, options).region;
}

Vec3 compute_view_direction(const Vec3& p, const SurfacePatchSet& patches,
                            double field_range) {
  Vec3 field = Vec3::Zero();
  double nearest = std::numeric_limits<double>::infinity();
  Vec3 nearest_centroid = p;
  const double range2 = field_range * field_range;
  for (const SurfacePatch& patch : patches.patches()) {
    const Vec3 diff = p - patch.centroid;
    const double d2 = diff.squaredNorm();
    if (d2 < nearest && d2 > 0.0) {
      nearest = d2;
      nearest_centroid = patch.centroid;
    }
    if (d2 >= range2 || d2 == 0.0) continue;
    field += diff / (d2 * std::sqrt(d2));
  }
  const double norm = field.norm();
  if (norm > 0.0 && std::isfinite(norm)) return -field / norm;
  const Vec3 aim = nearest_centroid - p;
  if (aim.norm() > 0.0) return aim.normalized();
  return -Vec3::UnitZ();
}

std::vector<ViaPoint> sample_via_points(const VoxelGrid& region,
                                        const SurfacePatchSet& patches,
                                        const SamplingParams& params) {
  params.validate();
  const std::vector<VoxelIndex> voxels = region.occupied_voxels();
  if (voxels.empty()) throw EmptyRegionError("cannot sample from an empty region");
  const double r = region.resolution();
  std::vector<ViaPoint> out(params.num_via_points);
  parallel_for(out.size(), [&](std::size_t i) {
    std::mt19937_64 rng(splitmix64(params.seed ^ splitmix64(i + 1)));
    const VoxelIndex& v = voxels[uniform_index(rng, voxels.size())];
    const double u0 = unit_double(rng), u1 = unit_double(rng), u2 = unit_double(rng);
    ViaPoint vp;
    vp.id = static_cast<int>(i);
    vp.position = region.min_corner(v) + r * Vec3(u0, u1, u2);
    vp.direction = compute_view_direction(vp.position, patches, params.field_range);
    out[i] = vp;
  });
  return out;
}

std::optional<Vec3> interpolate_direction(const Vec3& start, const Vec3& end,
                                          double t) {
  if (t == 0.0) return start;
  if (t == 1.0) return end;
  const Vec3 raw = start + t * (end - start);
  const double norm = raw.norm();
  if (norm < 1e-6) return std::nullopt;
  return raw / norm;
}

std::optional<Pose> interpolate_pose(const Pose& start, const Pose& end,
                                     const Vec3& p_t) {
  const double span = (end.position - start.position).norm();
  double t;
  if (p_t == start.position || span == 0.0) {
    t = 0.0;
  } else if (p_t == end.position) {
    t = 1.0;
  } else {
    t = (p_t - start.position).norm() / span;
  }
  const auto dir = interpolate_direction(start.direction, end.direction, t);
  if (!dir) return std::nullopt;
  return Pose{p_t, *dir};
}

std::optional<std::vector<Vec3>> StraightLinePlanner::connect(
    const Vec3& from, const Vec3& to) const {
  if (!segment_clear(*safety_, Segment{from, to})) return std::nullopt;
  return std::vector<Vec3>{from, to};
}

std::optional<PathPrimitive> make_primitive(const ViaPoint& a, const ViaPoint& b,
                                            std::vector<Vec3> polyline,
                                            double spacing) {
  static const double kMinDot =
      std::cos(kMaxEndpointAngleDeg * std::numbers::pi / 180.0);
  if (polyline.size() < 2) return std::nullopt;
  if (a.direction.dot(b.direction) < kMinDot) return std::nullopt;

  double length = 0.0;
  for (std::size_t s = 1; s < polyline.size(); ++s) {
    length += (polyline[s] - polyline[s - 1]).norm();
  }
  if (!(length > 0.0)) return std::nullopt;

  PathPrimitive prim;
  prim.from = a.id;
  prim.to = b.id;
  prim.length = length;
  prim.poses.push_back(a.pose());
  double travelled = 0.0;
  for (std::size_t s = 1; s < polyline.size(); ++s) {
    const Vec3& p0 = polyline[s - 1];
    const Vec3& p1 = polyline[s];
    const double seg = (p1 - p0).norm();
    const int steps = std::max(1, static_cast<int>(std::ceil(seg / spacing)));
    for (int k = 1; k <= steps; ++k) {
      const bool last = (s + 1 == polyline.size()) && k == steps;
      const double local = static_cast<double>(k) / steps;
      const double t = last ? 1.0 : (travelled + local * seg) / length;
      const auto dir = interpolate_direction(a.direction, b.direction, t);
      if (!dir) return std::nullopt;
      const Vec3 pos = last ? polyline.back() : Vec3(p0 + local * (p1 - p0));
      prim.poses.push_back(Pose{pos, *dir});
    }
    travelled += seg;
  }
  prim.polyline = std::move(polyline);
  return prim;
}

std::vector<PathPrimitive> sample_primitives(std::span<const ViaPoint> via_points,
                                             const LocalPlanner& planner,
                                             const SamplingParams& params) {
  const std::size_t n = via_points.size();
  std::vector<std::vector<PathPrimitive>> per_source(n);
  const double pair2 = params.pair_distance * params.pair_distance;
  parallel_for(n, [&](std::size_t i) {
    const ViaPoint& a = via_points[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const ViaPoint& b = via_points[j];
      if ((a.position - b.position).squaredNorm() > pair2) continue;
      // Orient from the lower id so the pair is planned identically either way.
      const bool swap = b.id < a.id;
      const ViaPoint& lo = swap ? b : a;
      const ViaPoint& hi = swap ? a : b;
      auto polyline = planner.connect(lo.position, hi.position);
      if (!polyline) continue;
      auto prim = make_primitive(lo, hi, std::move(*polyline), params.pose_spacing);
      if (prim) per_source[i].push_back(std::move(*prim));
    }
  });
  std::vector<PathPrimitive> out;
  for (auto& list : per_source) {
    for (auto& prim : list) {
      prim.id = static_cast<int>(out.size());
      out.push_back(std::move(prim));
    }
  }
  return out;
}

std::vector<PathPrimitive> sample_primitives(std::span<const ViaPoint> via_points,
                                             const VoxelGrid& safety,
                                             const SamplingParams& params) {
  return sample_primitives(via_points, StraightLinePlanner(safety), params);
}

std::vector<Pose> sample_walk_poses(std::span<const Pose> nodes, double spacing) {
  std::vector<Pose> out;
  if (nodes.empty()) return out;
  out.push_back(nodes.front());
  for (std::size_t s = 1; s < nodes.size(); ++s) {
    const Pose& a = nodes[s - 1];
    const Pose& b = nodes[s];
    const double seg = (b.position - a.position).norm();
    const int steps = std::max(1, static_cast<int>(std::ceil(seg / spacing)));
    for (int k = 1; k <= steps; ++k) {
      const double t = k == steps ? 1.0 : static_cast<double>(k) / steps;
      const Vec3 pos = k == steps ? b.position : Vec3(a.position + t * (b.position - a.position));
      const auto dir = interpolate_direction(a.direction, b.direction, t);
      out.push_back(Pose{pos, dir ? *dir : a.direction});
    }
  }
  return out;
}

}  // namespace pcgplan
