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

#include <doctest.h>

#include "pcgplan/errors.h"
#include "pcgplan/visibility/visibility.h"
#include "test_util.h"

namespace pcgplan {
namespace {

constexpr double kDeg = M_PI / 180.0;

// A 10x10 wall in the plane y = 0 facing -y, split into 1x1 patches.
struct WallScene {
  TriangleMesh mesh;
  SurfacePatchSet patches;
  WallScene() {
    mesh = TriangleMesh({Vec3(-5, 0, -5), Vec3(5, 0, -5), Vec3(5, 0, 5), Vec3(-5, 0, 5)},
                        {{0, 1, 2}, {0, 2, 3}});
    patches = make_patches(mesh, 1.0);
  }
};

// Patch of `s` closest to `p`.
std::size_t nearest_patch(const SurfacePatchSet& s, const Vec3& p) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if ((s[k].centroid - p).norm() < (s[best].centroid - p).norm()) best = k;
  }
  return best;
}

TEST_CASE("field of view half angles") {
  SensorModel s;
  const FovHalfAngles f = derive_fov_half_angles(s);
  // tan(47 deg) split 0.8 / 0.6 along the 4:3 diagonal.
  CHECK(f.horizontal / kDeg == doctest::Approx(40.63).epsilon(1e-4));
  CHECK(f.vertical / kDeg == doctest::Approx(32.76).epsilon(1e-4));
  CHECK(std::tan(f.horizontal) == doctest::Approx(0.8 * std::tan(47 * kDeg)));
  CHECK(std::tan(f.vertical) == doctest::Approx(0.6 * std::tan(47 * kDeg)));

  s.fov_diag_deg = 90;
  s.image_width = s.image_height = 1000;
  const FovHalfAngles sq = derive_fov_half_angles(s);
  CHECK(sq.horizontal == doctest::Approx(std::atan(1 / std::sqrt(2.0))));
  CHECK(sq.horizontal / kDeg == doctest::Approx(35.26).epsilon(2e-4));
  CHECK(sq.vertical == doctest::Approx(sq.horizontal));

  s.fov_diag_deg = 180;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("camera frame conventions") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Pose p{Vec3(1, 2, 3), testing::random_unit(rng)};
    if (i == 0) p.direction = Vec3::UnitZ();
    if (i == 1) p.direction = -Vec3::UnitZ();
    const CameraFrame f = CameraFrame::from_pose(p);
    CHECK(f.forward.isApprox(p.direction));
    CHECK(f.right.norm() == doctest::Approx(1.0));
    CHECK(f.down.norm() == doctest::Approx(1.0));
    CHECK(std::abs(f.right.dot(f.down)) < 1e-12);
    CHECK(std::abs(f.right.dot(f.forward)) < 1e-12);
    CHECK((f.right.cross(f.down) - f.forward).norm() < 1e-12);
    const Eigen::Isometry3d t = f.world_from_camera();
    CHECK((t * Vec3(0, 0, 2) - (p.position + 2 * f.forward)).norm() < 1e-12);
    CHECK((t.inverse() * (t * Vec3(0.3, -1, 4)) - Vec3(0.3, -1, 4)).norm() < 1e-12);
  }
  // Level camera: image "down" points to the ground.
  const CameraFrame level = CameraFrame::from_pose({Vec3::Zero(), Vec3::UnitX()});
  CHECK(level.down.isApprox(-Vec3::UnitZ()));
}

TEST_CASE("four visibility conditions") {
  WallScene w;
  const BvhRayCaster caster(w.mesh);
  const VisibilityModel vis(w.patches, caster, SensorModel{}, 0.05);
  const std::size_t centre = nearest_patch(w.patches, Vec3(0, 0, 0));
  // Wall faces -y (counter-clockwise seen from -y).
  REQUIRE(w.mesh.normal(0).isApprox(-Vec3::UnitY()));

  CHECK(vis.pose_sees_patch({Vec3(0, -10, 0), Vec3::UnitY()}, centre));
  // Range.
  CHECK_FALSE(vis.pose_sees_patch({Vec3(0, -60, 0), Vec3::UnitY()}, centre));
  // Back side.
  CHECK_FALSE(vis.pose_sees_patch({Vec3(0, 10, 0), -Vec3::UnitY()}, centre));
  // Viewing angle: 80 degrees off the normal.
  const Vec3 grazing = Vec3(std::sin(80 * kDeg), -std::cos(80 * kDeg), 0) * 10;
  CHECK_FALSE(vis.pose_sees_patch({grazing, -grazing.normalized()}, centre));
  const Vec3 ok = Vec3(std::sin(60 * kDeg), -std::cos(60 * kDeg), 0) * 10;
  CHECK(vis.pose_sees_patch({ok, -ok.normalized()}, centre));
  // Field of view: looking 60 degrees sideways.
  const Vec3 side(std::sin(60 * kDeg), std::cos(60 * kDeg), 0);
  CHECK_FALSE(vis.pose_sees_patch({Vec3(0, -10, 0), side}, centre));
  // Facing away.
  CHECK_FALSE(vis.pose_sees_patch({Vec3(0, -10, 0), -Vec3::UnitY()}, centre));
}

TEST_CASE("occlusion") {
  WallScene w;
  std::vector<Vec3> v = w.mesh.vertices();
  std::vector<TriangleIndices> t = w.mesh.triangles();
  // A small blocker between the camera and the wall centre.
  const TriangleMesh blocker = make_box(Vec3(-0.5, -5.5, -0.5), Vec3(0.5, -4.5, 0.5));
  const int base = static_cast<int>(v.size());
  for (const Vec3& p : blocker.vertices()) v.push_back(p);
  for (auto tri : blocker.triangles()) t.push_back({tri[0] + base, tri[1] + base, tri[2] + base});
  const TriangleMesh mesh(v, t);
  const SurfacePatchSet patches = make_patches(mesh, 1.0);
  const BvhRayCaster caster(mesh);
  const VisibilityModel vis(patches, caster, SensorModel{}, 0.05);
  const std::size_t centre = nearest_patch(patches, Vec3(0, 0, 0));
  CHECK_FALSE(vis.pose_sees_patch({Vec3(0, -10, 0), Vec3::UnitY()}, centre));
  const std::size_t corner = nearest_patch(patches, Vec3(4, 0, 4));
  CHECK(vis.pose_sees_patch({Vec3(0, -10, 0), Vec3::UnitY()}, corner));
}

TEST_CASE("BVH and brute-force casters agree") {
  const TriangleMesh mesh = testing::fan_cube();
  const SurfacePatchSet patches = make_patches(mesh, 0.1);
  REQUIRE(patches.size() == 96);
  const BvhRayCaster bvh(mesh);
  const BruteForceRayCaster brute(mesh);
  const VisibilityModel a(patches, bvh, SensorModel{}, 0.05);
  const VisibilityModel b(patches, brute, SensorModel{}, 0.05);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(1.5, 4.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 pos = Vec3::Constant(0.5) + testing::random_unit(rng) * u(rng);
    const Vec3 dir = (Vec3::Constant(0.5) - pos).normalized();
    CHECK(a.pose_visibility({pos, dir}) == b.pose_visibility({pos, dir}));
  }
}

TEST_CASE("primitive visibility is the union of its poses") {
  const TriangleMesh mesh = testing::fan_cube();
  const SurfacePatchSet patches = make_patches(mesh, 0.1);
  const BvhRayCaster caster(mesh);
  const VisibilityModel vis(patches, caster, SensorModel{}, 0.05);
  const ViaPoint a = testing::via_point(0, Vec3(-2, 0.5, 0.5), Vec3::UnitX());
  const ViaPoint b = testing::via_point(1, Vec3(0.5, -2, 0.5), Vec3::UnitY());
  const auto prim = make_primitive(a, b, {a.position, b.position}, 0.5);
  REQUIRE(prim.has_value());
  DynamicBitset expect(patches.size());
  for (const Pose& p : prim->poses) expect.merge(vis.pose_visibility(p));
  const DynamicBitset got = vis.primitive_visibility(*prim);
  CHECK(got == expect);
  CHECK(vis.pose_visibility(a.pose()).is_subset_of(got));
  CHECK(vis.pose_visibility(b.pose()).is_subset_of(got));
  CHECK(got.count() >= 16);

  // accumulate leaves bits already set untouched.
  DynamicBitset all(patches.size());
  for (std::size_t k = 0; k < all.size(); ++k) all.set(k);
  vis.accumulate(a.pose(), all);
  CHECK(all.count() == patches.size());
}

}  // namespace
}  // namespace pcgplan
