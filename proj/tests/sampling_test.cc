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

#include <cmath>
#include <random>
#include <set>

#include <doctest.h>

#include "pcgplan/errors.h"
#include "pcgplan/geometry/voxel_grid.h"
#include "pcgplan/parallel.h"
#include "pcgplan/sampling/sampling.h"
#include "test_util.h"

namespace pcgplan {
namespace {

using testing::via_point;

// Triangle with centroid exactly at `c`, area well below 1.
void add_tiny_patch(const Vec3& c, std::vector<Vec3>& v, std::vector<TriangleIndices>& t,
                    const Vec3& normal_hint = Vec3::UnitZ()) {
  const double e = 1e-3;
  const Vec3 u = normal_hint.unitOrthogonal();
  const Vec3 w = normal_hint.cross(u);
  const int b = static_cast<int>(v.size());
  v.push_back(c + 2 * e * u);
  v.push_back(c - e * u + e * w);
  v.push_back(c - e * u - e * w);
  t.push_back({b, b + 1, b + 2});
}

SurfacePatchSet patches_at(const std::vector<Vec3>& centres) {
  std::vector<Vec3> v;
  std::vector<TriangleIndices> t;
  for (const Vec3& c : centres) add_tiny_patch(c, v, t);
  return make_patches(TriangleMesh(v, t), 1.0);
}

SamplingParams small_params(double d_safe, double d_vis) {
  SamplingParams p;
  p.safety_distance = d_safe;
  p.max_range = d_vis;
  p.field_range = d_vis;
  p.pair_distance = d_vis / 2;
  p.pose_spacing = 0.5;
  return p;
}

TEST_CASE("params validation") {
  SamplingParams p;
  CHECK_NOTHROW(p.validate());
  p.safety_distance = p.max_range;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = SamplingParams{};
  p.num_via_points = 1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = SamplingParams{};
  p.pair_distance = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("single-voxel structure gives the 12-voxel shell") {
  const TriangleMesh tri({Vec3(0, 0, 0), Vec3(0.5, 0, 0), Vec3(0, 0.5, 0)}, {{0, 1, 2}});
  const VoxelGrid region = build_sampling_region(tri, small_params(1.0, 1.5), 1.0);
  CHECK(region.occupied_count() == 12);
}

TEST_CASE("box shell distances") {
  const TriangleMesh box = make_structure(StructureKind::kBox);
  SamplingParams p = small_params(2.0, 50.0);
  VoxelizeOptions fill;
  fill.fill_interior = true;
  const VoxelGrid region = build_sampling_region(box, p, 1.0, fill);
  REQUIRE(region.occupied_count() > 0);
  const double slack = std::sqrt(3.0);
  std::size_t checked = 0;
  const auto voxels = region.occupied_voxels();
  for (std::size_t i = 0; i < voxels.size(); i += 7) {
    const double d = distance_to_mesh(box, region.center(voxels[i]));
    CHECK(d > 2.0 - slack);
    CHECK(d < 50.0 + slack);
    ++checked;
  }
  CHECK(checked > 10000);
}

TEST_CASE("empty sampling region is an error") {
  const TriangleMesh tri({Vec3(0, 0, 0), Vec3(0.5, 0, 0), Vec3(0, 0.5, 0)}, {{0, 1, 2}});
  // d_safe and d_vis round to the same voxel ball.
  CHECK_THROWS_AS(build_sampling_region(tri, small_params(1.0, 1.2), 1.0), EmptyRegionError);
}

TEST_CASE("view direction examples") {
  const SurfacePatchSet one = patches_at({Vec3::Zero()});
  const Vec3 d = compute_view_direction(Vec3(0, 0, 10), one, 50.0);
  CHECK((d - Vec3(0, 0, -1)).norm() < 1e-9);

  const SurfacePatchSet two = patches_at({Vec3(1, 0, 0), Vec3(-1, 0, 0)});
  const Vec3 s = compute_view_direction(Vec3(0, 0, 5), two, 50.0);
  CHECK((s - Vec3(0, 0, -1)).norm() < 1e-9);

  // Out of field range: aim at the nearest centroid.
  const Vec3 f = compute_view_direction(Vec3(100, 0, 0), two, 10.0);
  CHECK((f - Vec3(-1, 0, 0)).norm() < 1e-9);
}

TEST_CASE("view direction is anti-parallel for a single patch") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 100; ++i) {
    const Vec3 c(u(rng), u(rng), u(rng));
    const SurfacePatchSet ps = patches_at({c});
    Vec3 p(u(rng), u(rng), u(rng));
    if ((p - ps[0].centroid).norm() < 0.5) p += Vec3(1, 1, 1);
    const Vec3 nu = compute_view_direction(p, ps, 100.0);
    const Vec3 expect = (ps[0].centroid - p).normalized();
    CHECK((nu - expect).norm() < 1e-9);
    CHECK(nu.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("via-point sampling") {
  const TriangleMesh cube = testing::unit_cube();
  SamplingParams p = small_params(0.5, 3.0);
  p.num_via_points = 50;
  p.seed = 42;
  const VoxelGrid region = build_sampling_region(cube, p, 0.25);
  const SurfacePatchSet patches = make_patches(cube, 0.1);
  const auto a = sample_via_points(region, patches, p);
  const auto b = sample_via_points(region, patches, p);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == static_cast<int>(i));
    CHECK(a[i].position == b[i].position);
    CHECK(a[i].direction == b[i].direction);
    CHECK(a[i].direction.norm() == doctest::Approx(1.0).epsilon(1e-6));
    const auto v = region.voxel_of(a[i].position);
    REQUIRE(v.has_value());
    CHECK(region.occupied(*v));
  }
  p.seed = 43;
  const auto c = sample_via_points(region, patches, p);
  CHECK(c[0].position != a[0].position);
}

TEST_CASE("direction interpolation") {
  const Vec3 s(1, 0, 0), e(0, 1, 0);
  CHECK(*interpolate_direction(s, e, 0.0) == s);
  CHECK(*interpolate_direction(s, e, 1.0) == e);
  CHECK((*interpolate_direction(s, e, 0.5) - Vec3(1, 1, 0) / std::sqrt(2.0)).norm() < 1e-12);
  CHECK_FALSE(interpolate_direction(s, -s, 0.5).has_value());

  const Pose ps{Vec3(0, 0, 0), s}, pe{Vec3(4, 0, 0), e};
  CHECK(interpolate_pose(ps, pe, ps.position)->direction == s);
  CHECK(interpolate_pose(ps, pe, pe.position)->direction == e);
  const auto mid = interpolate_pose(ps, pe, Vec3(2, 0, 0));
  CHECK((mid->direction - Vec3(1, 1, 0) / std::sqrt(2.0)).norm() < 1e-12);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = testing::random_unit(rng), b = testing::random_unit(rng);
    if (a.dot(b) < -0.99) continue;
    CHECK(interpolate_direction(a, b, t(rng))->norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("primitive construction") {
  const ViaPoint a = via_point(0, Vec3(0, 0, 0), Vec3(1, 0, 0));
  const ViaPoint b = via_point(1, Vec3(10, 0, 0), Vec3(0, 1, 0));
  const auto prim = make_primitive(a, b, {a.position, b.position}, 2.0);
  REQUIRE(prim.has_value());
  CHECK(prim->length == doctest::Approx(10.0));
  CHECK(prim->poses.front().position == a.position);
  CHECK(prim->poses.front().direction == a.direction);
  CHECK(prim->poses.back().position == b.position);
  CHECK(prim->poses.back().direction == b.direction);
  for (std::size_t i = 1; i < prim->poses.size(); ++i) {
    CHECK((prim->poses[i].position - prim->poses[i - 1].position).norm() <= 2.0 + 1e-12);
  }

  const ViaPoint anti = via_point(2, Vec3(5, 5, 0), Vec3(-1, 0, 0));
  CHECK_FALSE(make_primitive(a, anti, {a.position, anti.position}, 2.0).has_value());
  // 176 degrees apart is rejected, 170 is kept.
  const double r176 = 176.0 * M_PI / 180, r170 = 170.0 * M_PI / 180;
  const ViaPoint c176 = via_point(3, Vec3(5, 0, 1), Vec3(std::cos(r176), std::sin(r176), 0));
  const ViaPoint c170 = via_point(4, Vec3(5, 0, 1), Vec3(std::cos(r170), std::sin(r170), 0));
  CHECK_FALSE(make_primitive(a, c176, {a.position, c176.position}, 2.0).has_value());
  CHECK(make_primitive(a, c170, {a.position, c170.position}, 2.0).has_value());
}

TEST_CASE("primitive sampling examples") {
  // A 2x2x2 safety block centred at the origin.
  VoxelGrid safety(Vec3(-1, -1, -1), 1.0, {2, 2, 2});
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) safety.set(i, j, k);
  SamplingParams p = small_params(1.0, 50.0);
  p.pair_distance = 25.0;

  std::vector<ViaPoint> far = {via_point(0, Vec3(50, 0, 0)), via_point(1, Vec3(150, 0, 0))};
  CHECK(sample_primitives(far, safety, p).empty());

  std::vector<ViaPoint> near = {via_point(0, Vec3(5, 5, 0)), via_point(1, Vec3(5, -5, 0))};
  const auto one = sample_primitives(near, safety, p);
  REQUIRE(one.size() == 1);
  CHECK(one[0].length == doctest::Approx(10.0));
  CHECK(one[0].from == 0);
  CHECK(one[0].to == 1);

  std::vector<ViaPoint> across = {via_point(0, Vec3(-5, 0, 0)), via_point(1, Vec3(5, 0, 0))};
  CHECK(sample_primitives(across, safety, p).empty());
}

TEST_CASE("primitive sampling is order independent and deterministic") {
  const TriangleMesh cube = testing::unit_cube();
  SamplingParams p = small_params(0.5, 4.0);
  p.num_via_points = 60;
  p.pair_distance = 3.0;
  const SamplingGrids grids = build_sampling_grids(cube, p, 0.25);
  const SurfacePatchSet patches = make_patches(cube, 0.1);
  const auto vps = sample_via_points(grids.region, patches, p);

  set_worker_threads(1);
  const auto serial = sample_primitives(vps, grids.safety, p);
  set_worker_threads(4);
  const auto parallel = sample_primitives(vps, grids.safety, p);
  set_worker_threads(0);
  REQUIRE(serial.size() == parallel.size());
  REQUIRE(serial.size() > 20);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].id == static_cast<int>(i));
    CHECK(serial[i].from == parallel[i].from);
    CHECK(serial[i].to == parallel[i].to);
    CHECK(serial[i].length == parallel[i].length);
    CHECK(serial[i].poses.size() == parallel[i].poses.size());
  }

  std::vector<ViaPoint> reversed(vps.rbegin(), vps.rend());
  std::set<std::pair<int, int>> fwd, rev;
  for (const auto& pr : serial) fwd.insert({pr.from, pr.to});
  for (const auto& pr : sample_primitives(reversed, grids.safety, p)) {
    CHECK(pr.from < pr.to);
    rev.insert({pr.from, pr.to});
  }
  CHECK(fwd == rev);

  // Clearance: every pose keeps d_safe minus a voxel diagonal from the mesh.
  const double bound = p.safety_distance - 0.25 * std::sqrt(3.0);
  for (const auto& pr : serial) {
    for (const Pose& pose : pr.poses) CHECK(distance_to_mesh(cube, pose.position) > bound);
  }
}

TEST_CASE("walk pose sampling keeps spacing and endpoints") {
  const std::vector<Pose> nodes = {{Vec3(0, 0, 0), Vec3(1, 0, 0)},
                                   {Vec3(3, 0, 0), Vec3(0, 1, 0)},
                                   {Vec3(3, 7, 0), Vec3(0, 0, 1)}};
  const auto poses = sample_walk_poses(nodes, 2.0);
  CHECK(poses.front().position == nodes[0].position);
  CHECK(poses.back().position == nodes[2].position);
  CHECK(poses.back().direction == nodes[2].direction);
  for (std::size_t i = 1; i < poses.size(); ++i) {
    CHECK((poses[i].position - poses[i - 1].position).norm() <= 2.0 + 1e-12);
  }
  CHECK(sample_walk_poses({}, 1.0).empty());
}

}  // namespace
}  // namespace pcgplan
