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

#include "pcgplan/geometry/voxel_grid.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <string>

#include "pcgplan/errors.h"

namespace pcgplan {
namespace {

std::size_t checked_volume(const std::array<int, 3>& dims, std::size_t max_voxels) {
  const double volume = static_cast<double>(dims[0]) * dims[1] * dims[2];
  if (volume > static_cast<double>(max_voxels)) {
    throw ConfigError("voxel grid of " + std::to_string(dims[0]) + "x" +
                      std::to_string(dims[1]) + "x" + std::to_string(dims[2]) +
                      " exceeds the configured maximum of " +
                      std::to_string(max_voxels) + " voxels");
  }
  return static_cast<std::size_t>(volume);
}

// Exact 1D squared distance transform of sampled function f (Felzenszwalb and
// Huttenlocher lower envelope of parabolas). Writes into d.
void distance_transform_1d(const double* f, double* d, int n, int* v, double* z) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto intersect = [&](int q, int p) {
    return ((f[q] + static_cast<double>(q) * q) -
            (f[p] + static_cast<double>(p) * p)) /
           (2.0 * q - 2.0 * p);
  };
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    double s = intersect(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

VoxelGrid::VoxelGrid(const Vec3& origin, double resolution,
                     const std::array<int, 3>& dims)
    : origin_(origin), resolution_(resolution), dims_(dims) {
  if (!(resolution > 0.0)) throw ConfigError("voxel resolution must be positive");
  for (int d : dims) {
    if (d < 1) throw ConfigError("voxel grid dimensions must be >= 1");
  }
  cells_.assign(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2], 0);
}

VoxelIndex VoxelGrid::unravel(std::size_t lin) const {
  const int i = static_cast<int>(lin % dims_[0]);
  lin /= dims_[0];
  const int j = static_cast<int>(lin % dims_[1]);
  const int k = static_cast<int>(lin / dims_[1]);
  return {i, j, k};
}

std::optional<VoxelIndex> VoxelGrid::voxel_of(const Vec3& p) const {
  const Vec3 local = (p - origin_) / resolution_;
  const VoxelIndex v(static_cast<int>(std::floor(local.x())),
                     static_cast<int>(std::floor(local.y())),
                     static_cast<int>(std::floor(local.z())));
  if (!in_bounds(v.x(), v.y(), v.z())) return std::nullopt;
  return v;
}

std::size_t VoxelGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

std::vector<VoxelIndex> VoxelGrid::occupied_voxels() const {
  std::vector<VoxelIndex> out;
  for (std::size_t lin = 0; lin < cells_.size(); ++lin) {
    if (cells_[lin]) out.push_back(unravel(lin));
  }
  return out;
}

bool triangle_box_overlap(const Vec3& box_center, const Vec3& half_size,
                          const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 v0 = a - box_center, v1 = b - box_center, v2 = c - box_center;
  const Vec3 e[3] = {v1 - v0, v2 - v1, v0 - v2};
  const double slack = 1e-9 * half_size.maxCoeff();

  auto separated = [&](const Vec3& axis) {
    const double p0 = axis.dot(v0), p1 = axis.dot(v1), p2 = axis.dot(v2);
    const double rad = half_size.x() * std::abs(axis.x()) +
                       half_size.y() * std::abs(axis.y()) +
                       half_size.z() * std::abs(axis.z());
    const double lo = std::min({p0, p1, p2}), hi = std::max({p0, p1, p2});
    const double tol = rad + slack * axis.cwiseAbs().sum();
    return lo > tol || hi < -tol;
  };

  for (int i = 0; i < 3; ++i) {
    if (separated(Vec3::Unit(i))) return false;
  }
  const Vec3 normal = e[0].cross(e[1]);
  if (separated(normal)) return false;
  for (const Vec3& edge : e) {
    for (int i = 0; i < 3; ++i) {
      const Vec3 axis = Vec3::Unit(i).cross(edge);
      if (axis.squaredNorm() == 0.0) continue;
      if (separated(axis)) return false;
    }
  }
  return true;
}

VoxelGrid voxelize(const TriangleMesh& mesh, double resolution,
                   const VoxelizeOptions& options) {
  if (!(resolution > 0.0)) throw ConfigError("voxel resolution must be positive");
  if (mesh.empty()) throw MeshError("cannot voxelize an empty mesh");
  const Aabb box = mesh.bounds();
  std::array<int, 3> dims;
  for (int a = 0; a < 3; ++a) {
    const double cells = std::ceil(box.extent()[a] / resolution - 1e-9);
    if (cells > 1e9) throw ConfigError("voxel grid too large");
    dims[a] = std::max(1, static_cast<int>(cells));
  }
  checked_volume(dims, options.max_voxels);
  VoxelGrid grid(box.min, resolution, dims);

  const Vec3 half = Vec3::Constant(0.5 * resolution);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3& a = mesh.vertex(t, 0);
    const Vec3& b = mesh.vertex(t, 1);
    const Vec3& c = mesh.vertex(t, 2);
    const Vec3 lo = ((a.cwiseMin(b).cwiseMin(c)) - box.min) / resolution;
    const Vec3 hi = ((a.cwiseMax(b).cwiseMax(c)) - box.min) / resolution;
    std::array<int, 3> i0, i1;
    for (int k = 0; k < 3; ++k) {
      i0[k] = std::clamp(static_cast<int>(std::floor(lo[k] - 1e-9)) - 1, 0, dims[k] - 1);
      i1[k] = std::clamp(static_cast<int>(std::floor(hi[k] + 1e-9)) + 1, 0, dims[k] - 1);
    }
    for (int z = i0[2]; z <= i1[2]; ++z) {
      for (int y = i0[1]; y <= i1[1]; ++y) {
        for (int x = i0[0]; x <= i1[0]; ++x) {
          if (grid.occupied(x, y, z)) continue;
          if (triangle_box_overlap(grid.center(x, y, z), half, a, b, c)) {
            grid.set(x, y, z);
          }
        }
      }
    }
  }

  if (options.fill_interior) {
    // Flood the free space reachable from outside over a one-voxel margin;
    // whatever free space remains is enclosed.
    const std::array<int, 3> pd{dims[0] + 2, dims[1] + 2, dims[2] + 2};
    auto plin = [&](int x, int y, int z) {
      return (static_cast<std::size_t>(z) * pd[1] + y) * pd[0] + x;
    };
    auto blocked = [&](int x, int y, int z) {
      return grid.occupied_or_free(x - 1, y - 1, z - 1);
    };
    std::vector<uint8_t> outside(static_cast<std::size_t>(pd[0]) * pd[1] * pd[2], 0);
    std::deque<std::array<int, 3>> queue;
    outside[plin(0, 0, 0)] = 1;
    queue.push_back({0, 0, 0});
    static constexpr int kSteps[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                         {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    while (!queue.empty()) {
      const auto [x, y, z] = queue.front();
      queue.pop_front();
      for (const auto& s : kSteps) {
        const int nx = x + s[0], ny = y + s[1], nz = z + s[2];
        if (nx < 0 || ny < 0 || nz < 0 || nx >= pd[0] || ny >= pd[1] || nz >= pd[2]) {
          continue;
        }
        const std::size_t l = plin(nx, ny, nz);
        if (outside[l] || blocked(nx, ny, nz)) continue;
        outside[l] = 1;
        queue.push_back({nx, ny, nz});
      }
    }
    for (int z = 0; z < dims[2]; ++z) {
      for (int y = 0; y < dims[1]; ++y) {
        for (int x = 0; x < dims[0]; ++x) {
          if (!outside[plin(x + 1, y + 1, z + 1)]) grid.set(x, y, z);
        }
      }
    }
  }
  return grid;
}

VoxelGrid dilate(const VoxelGrid& grid, double distance, std::size_t max_voxels) {
  if (!(distance >= 0.0)) throw ConfigError("dilation distance must be >= 0");
  const double r = grid.resolution();
  const double radius = distance / r;
  const int pad = distance > 0.0 ? static_cast<int>(std::ceil(radius - 1e-9)) : 0;
  if (pad == 0) return grid;
  const auto& in_dims = grid.dims();
  const std::array<int, 3> dims{in_dims[0] + 2 * pad, in_dims[1] + 2 * pad,
                                in_dims[2] + 2 * pad};
  const std::size_t n = checked_volume(dims, max_voxels);
  VoxelGrid out(grid.origin() - Vec3::Constant(pad * r), r, dims);

  constexpr double kFar = 1e20;
  std::vector<double> dist(n, kFar);
  for (int z = 0; z < in_dims[2]; ++z) {
    for (int y = 0; y < in_dims[1]; ++y) {
      for (int x = 0; x < in_dims[0]; ++x) {
        if (grid.occupied(x, y, z)) dist[out.linear(x + pad, y + pad, z + pad)] = 0.0;
      }
    }
  }

  const int longest = std::max({dims[0], dims[1], dims[2]});
  std::vector<double> f(longest), d(longest), z(longest + 1);
  std::vector<int> v(longest);
  const std::size_t stride[3] = {1, static_cast<std::size_t>(dims[0]),
                                 static_cast<std::size_t>(dims[0]) * dims[1]};
  for (int axis = 0; axis < 3; ++axis) {
    const int len = dims[axis];
    const int o1 = (axis + 1) % 3, o2 = (axis + 2) % 3;
    for (int b = 0; b < dims[o2]; ++b) {
      for (int a = 0; a < dims[o1]; ++a) {
        const std::size_t base = a * stride[o1] + b * stride[o2];
        bool any = false;
        for (int q = 0; q < len; ++q) {
          f[q] = dist[base + q * stride[axis]];
          any = any || f[q] < kFar;
        }
        if (!any) continue;
        distance_transform_1d(f.data(), d.data(), len, v.data(), z.data());
        for (int q = 0; q < len; ++q) dist[base + q * stride[axis]] = d[q];
      }
    }
  }

  const double limit = radius * radius * (1.0 + 1e-12) + 1e-9;
  for (std::size_t lin = 0; lin < n; ++lin) {
    if (dist[lin] <= limit) {
      const VoxelIndex idx = out.unravel(lin);
      out.set(idx.x(), idx.y(), idx.z());
    }
  }
  return out;
}

VoxelGrid subtract(const VoxelGrid& a, const VoxelGrid& b) {
  const double r = a.resolution();
  if (std::abs(r - b.resolution()) > 1e-9 * r) {
    throw ConfigError("voxel subtract: resolution mismatch");
  }
  const Vec3 shift = (b.origin() - a.origin()) / r;
  const Vec3 rounded = shift.array().round();
  if ((shift - rounded).cwiseAbs().maxCoeff() > 1e-6) {
    throw ConfigError("voxel subtract: grids are not lattice-aligned");
  }
  const VoxelIndex offset = rounded.cast<int>();
  VoxelGrid out = a;
  const auto& dims = a.dims();
  for (int z = 0; z < dims[2]; ++z) {
    for (int y = 0; y < dims[1]; ++y) {
      for (int x = 0; x < dims[0]; ++x) {
        if (!a.occupied(x, y, z)) continue;
        if (b.occupied_or_free(x - offset.x(), y - offset.y(), z - offset.z())) {
          out.set(x, y, z, false);
        }
      }
    }
  }
  return out;
}

bool segment_clear(const VoxelGrid& grid, const Segment& segment) {
  const double r = grid.resolution();
  const Vec3 p0 = (segment.start - grid.origin()) / r;
  const Vec3 dir = (segment.end - segment.start) / r;
  const auto& dims = grid.dims();

  // Clip the parameter range [0, 1] to the grid box [0, dims].
  double t0 = 0.0, t1 = 1.0;
  for (int a = 0; a < 3; ++a) {
    if (dir[a] == 0.0) {
      if (p0[a] < 0.0 || p0[a] > dims[a]) return true;
      continue;
    }
    double ta = (0.0 - p0[a]) / dir[a];
    double tb = (dims[a] - p0[a]) / dir[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return true;
  }

  const Vec3 q = p0 + t0 * dir;
  int cell[3], step[3];
  double t_max[3], t_delta[3];
  for (int a = 0; a < 3; ++a) {
    cell[a] = std::clamp(static_cast<int>(std::floor(q[a])), 0, dims[a] - 1);
    if (dir[a] > 0.0) {
      step[a] = 1;
      t_max[a] = t0 + (cell[a] + 1 - q[a]) / dir[a];
      t_delta[a] = 1.0 / dir[a];
    } else if (dir[a] < 0.0) {
      step[a] = -1;
      t_max[a] = t0 + (cell[a] - q[a]) / dir[a];
      t_delta[a] = -1.0 / dir[a];
    } else {
      step[a] = 0;
      t_max[a] = std::numeric_limits<double>::infinity();
      t_delta[a] = std::numeric_limits<double>::infinity();
    }
  }

  const int max_steps = dims[0] + dims[1] + dims[2] + 3;
  for (int n = 0; n <= max_steps; ++n) {
    if (grid.occupied(cell[0], cell[1], cell[2])) return false;
    int axis = 0;
    if (t_max[1] < t_max[axis]) axis = 1;
    if (t_max[2] < t_max[axis]) axis = 2;
    if (t_max[axis] > t1) break;
    cell[axis] += step[axis];
    if (cell[axis] < 0 || cell[axis] >= dims[axis]) break;
    t_max[axis] += t_delta[axis];
  }
  return true;
}

void write_voxel_list(const VoxelGrid& grid, std::ostream& out) {
  for (const VoxelIndex& v : grid.occupied_voxels()) {
    out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
}

}  // namespace pcgplan
