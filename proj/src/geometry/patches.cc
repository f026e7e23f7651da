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

#include "pcgplan/geometry/patches.h"

#include <algorithm>
#include <array>

#include "pcgplan/errors.h"

namespace pcgplan {
namespace {

using Tri = std::array<Vec3, 3>;

// Children in canonical order: corner a, corner b, corner c, center.
std::array<Tri, 4> split(const Tri& t) {
  const Vec3 ab = 0.5 * (t[0] + t[1]);
  const Vec3 bc = 0.5 * (t[1] + t[2]);
  const Vec3 ca = 0.5 * (t[2] + t[0]);
  return {Tri{t[0], ab, ca}, Tri{ab, t[1], bc}, Tri{ca, bc, t[2]},
          Tri{bc, ca, ab}};
}

void emit(const Tri& t, int depth, const Vec3& normal, int parent,
          std::vector<SurfacePatch>& out) {
  if (depth == 0) {
    SurfacePatch p;
    p.centroid = (t[0] + t[1] + t[2]) / 3.0;
    p.normal = normal;
    p.area = 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
    p.triangle = parent;
    out.push_back(p);
    return;
  }
  for (const Tri& c : split(t)) emit(c, depth - 1, normal, parent, out);
}

}  // namespace

double SurfacePatchSet::total_area() const {
  double a = 0.0;
  for (const auto& p : patches_) a += p.area;
  return a;
}

double SurfacePatchSet::max_patch_area() const {
  double a = 0.0;
  for (const auto& p : patches_) a = std::max(a, p.area);
  return a;
}

int SurfacePatchSet::locate(const TriangleMesh& mesh, std::size_t triangle,
                            const Vec3& point) const {
  const Vec3& a = mesh.vertex(triangle, 0);
  const Vec3 e1 = mesh.vertex(triangle, 1) - a;
  const Vec3 e2 = mesh.vertex(triangle, 2) - a;
  const Vec3 d = point - a;
  const double d11 = e1.dot(e1), d12 = e1.dot(e2), d22 = e2.dot(e2);
  const double d1 = d.dot(e1), d2 = d.dot(e2);
  const double den = d11 * d22 - d12 * d12;
  double v = (d22 * d1 - d12 * d2) / den;
  double w = (d11 * d2 - d12 * d1) / den;
  double u = 1.0 - v - w;

  int index = 0;
  for (int level = 0; level < levels_[triangle]; ++level) {
    int child;
    if (u >= 0.5) {
      child = 0;
      u = 2.0 * u - 1.0, v = 2.0 * v, w = 2.0 * w;
    } else if (v >= 0.5) {
      child = 1;
      u = 2.0 * u, v = 2.0 * v - 1.0, w = 2.0 * w;
    } else if (w >= 0.5) {
      child = 2;
      u = 2.0 * u, v = 2.0 * v, w = 2.0 * w - 1.0;
    } else {
      child = 3;
      u = 1.0 - 2.0 * u, v = 1.0 - 2.0 * v, w = 1.0 - 2.0 * w;
    }
    index = index * 4 + child;
  }
  return first_[triangle] + index;
}

SurfacePatchSet make_patches(const TriangleMesh& mesh, double max_area) {
  if (!(max_area > 0.0)) throw ConfigError("max patch area must be positive");
  SurfacePatchSet set;
  set.levels_.resize(mesh.num_triangles());
  set.first_.resize(mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    int levels = 0;
    double area = mesh.area(t);
    // Each level quarters the area; tolerance absorbs rounding at the limit.
    while (area > max_area * (1.0 + 1e-12)) {
      area *= 0.25;
      ++levels;
    }
    set.levels_[t] = levels;
    set.first_[t] = static_cast<int>(set.patches_.size());
    emit(Tri{mesh.vertex(t, 0), mesh.vertex(t, 1), mesh.vertex(t, 2)}, levels,
         mesh.normal(t), static_cast<int>(t), set.patches_);
  }
  return set;
}

}  // namespace pcgplan
