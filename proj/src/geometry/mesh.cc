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

#include "pcgplan/geometry/mesh.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <spdlog/spdlog.h>

#include "pcgplan/errors.h"

namespace pcgplan {
namespace {

constexpr double kDegenerateArea = 1e-12;

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeshError("cannot open mesh file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// OBJ index: 1-based, negative values are relative to the end.
int resolve_obj_index(const std::string& token, std::size_t vertex_count,
                      int line_no) {
  const std::string head = token.substr(0, token.find('/'));
  int idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stoi(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    throw MeshError("OBJ line " + std::to_string(line_no) +
                    ": bad face index '" + token + "'");
  }
  const long resolved = idx > 0 ? idx - 1 : static_cast<long>(vertex_count) + idx;
  if (idx == 0 || resolved < 0 || resolved >= static_cast<long>(vertex_count)) {
    throw MeshError("OBJ line " + std::to_string(line_no) +
                    ": face index out of range");
  }
  return static_cast<int>(resolved);
}

TriangleMesh parse_obj(const std::string& text, bool flip) {
  std::vector<Vec3> vertices;
  std::vector<TriangleIndices> triangles;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x() >> p.y() >> p.z())) {
        throw MeshError("OBJ line " + std::to_string(line_no) + ": bad vertex");
      }
      vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<int> face;
      std::string tok;
      while (ls >> tok) {
        face.push_back(resolve_obj_index(tok, vertices.size(), line_no));
      }
      if (face.size() < 3) {
        throw MeshError("OBJ line " + std::to_string(line_no) +
                        ": face with fewer than 3 vertices");
      }
      for (std::size_t k = 1; k + 1 < face.size(); ++k) {
        triangles.push_back({face[0], face[k], face[k + 1]});
      }
    }
  }
  return TriangleMesh(std::move(vertices), std::move(triangles), flip);
}

struct VertexWelder {
  std::map<std::array<double, 3>, int> ids;
  std::vector<Vec3> vertices;

  int add(const Vec3& p) {
    auto [it, inserted] =
        ids.try_emplace({p.x(), p.y(), p.z()}, static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(p);
    return it->second;
  }
};

TriangleMesh parse_stl_ascii(const std::string& text, bool flip) {
  VertexWelder welder;
  std::vector<TriangleIndices> triangles;
  std::istringstream in(text);
  std::string tok;
  std::vector<int> pending;
  while (in >> tok) {
    if (tok != "vertex") continue;
    Vec3 p;
    if (!(in >> p.x() >> p.y() >> p.z())) throw MeshError("STL: bad vertex");
    pending.push_back(welder.add(p));
    if (pending.size() == 3) {
      triangles.push_back({pending[0], pending[1], pending[2]});
      pending.clear();
    }
  }
  if (!pending.empty()) throw MeshError("STL: truncated facet");
  return TriangleMesh(std::move(welder.vertices), std::move(triangles), flip);
}

float read_f32_le(const char* p) {
  uint32_t bits;
  std::memcpy(&bits, p, 4);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap32(bits);
  }
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

uint32_t read_u32_le(const char* p) {
  uint32_t v;
  std::memcpy(&v, p, 4);
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
  return v;
}

TriangleMesh parse_stl_binary(const std::string& data, bool flip) {
  if (data.size() < 84) throw MeshError("binary STL: file too short");
  const uint32_t count = read_u32_le(data.data() + 80);
  if (data.size() < 84 + static_cast<std::size_t>(count) * 50) {
    throw MeshError("binary STL: truncated triangle records");
  }
  VertexWelder welder;
  std::vector<TriangleIndices> triangles;
  triangles.reserve(count);
  for (uint32_t t = 0; t < count; ++t) {
    const char* rec = data.data() + 84 + static_cast<std::size_t>(t) * 50;
    TriangleIndices tri;
    for (int k = 0; k < 3; ++k) {
      const char* v = rec + 12 + 12 * k;
      tri[k] = welder.add(Vec3(read_f32_le(v), read_f32_le(v + 4),
                               read_f32_le(v + 8)));
    }
    triangles.push_back(tri);
  }
  return TriangleMesh(std::move(welder.vertices), std::move(triangles), flip);
}

bool looks_like_binary_stl(const std::string& data) {
  if (data.size() < 84) return false;
  const uint32_t count = read_u32_le(data.data() + 80);
  if (data.size() == 84 + static_cast<std::size_t>(count) * 50) return true;
  return data.compare(0, 5, "solid") != 0;
}

void write_u32_le(std::ostream& out, uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
  out.write(reinterpret_cast<const char*>(&v), 4);
}

void write_f32_le(std::ostream& out, double d) {
  const float f = static_cast<float>(d);
  uint32_t bits;
  std::memcpy(&bits, &f, 4);
  write_u32_le(out, bits);
}

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices,
                           std::vector<TriangleIndices> triangles,
                           bool flip_normals)
    : vertices_(std::move(vertices)) {
  const int nv = static_cast<int>(vertices_.size());
  triangles_.reserve(triangles.size());
  for (auto tri : triangles) {
    for (int idx : tri) {
      if (idx < 0 || idx >= nv) {
        throw MeshError("triangle references vertex " + std::to_string(idx) +
                        " out of range");
      }
    }
    if (flip_normals) std::swap(tri[1], tri[2]);
    const Vec3 cross = (vertices_[tri[1]] - vertices_[tri[0]])
                           .cross(vertices_[tri[2]] - vertices_[tri[0]]);
    const double area = 0.5 * cross.norm();
    if (!(area > kDegenerateArea)) {
      ++dropped_degenerate_;
      continue;
    }
    triangles_.push_back(tri);
    normals_.push_back(cross.normalized());
    areas_.push_back(area);
  }
  if (dropped_degenerate_ > 0) {
    spdlog::warn("dropped {} degenerate triangle(s)", dropped_degenerate_);
  }
}

double TriangleMesh::surface_area() const {
  double total = 0.0;
  for (double a : areas_) total += a;
  return total;
}

Aabb TriangleMesh::bounds() const {
  Aabb box;
  for (const auto& tri : triangles_) {
    for (int idx : tri) box.extend(vertices_[idx]);
  }
  return box;
}

TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format,
                       bool flip_normals) {
  if (!std::filesystem::exists(path)) {
    throw MeshError("mesh file does not exist: " + path.string());
  }
  const std::string data = read_file(path);
  if (format == MeshFormat::kAuto) {
    const std::string ext = lower_extension(path);
    if (ext == ".obj") {
      format = MeshFormat::kObj;
    } else if (ext == ".stl") {
      format = looks_like_binary_stl(data) ? MeshFormat::kStlBinary
                                           : MeshFormat::kStlAscii;
    } else {
      throw MeshError("unrecognized mesh extension: " + path.string());
    }
  }
  TriangleMesh mesh;
  switch (format) {
    case MeshFormat::kObj:
      mesh = parse_obj(data, flip_normals);
      break;
    case MeshFormat::kStlAscii:
      mesh = parse_stl_ascii(data, flip_normals);
      break;
    case MeshFormat::kStlBinary:
      mesh = parse_stl_binary(data, flip_normals);
      break;
    case MeshFormat::kAuto:
      break;
  }
  if (mesh.empty()) {
    throw MeshError(mesh.dropped_degenerate() > 0
                        ? "mesh has only degenerate triangles: " + path.string()
                        : "mesh has no triangles: " + path.string());
  }
  return mesh;
}

void write_obj(const TriangleMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  for (const Vec3& v : mesh.vertices()) {
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const auto& t : mesh.triangles()) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_stl_binary(const TriangleMesh& mesh,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  char header[80] = {};
  std::strncpy(header, "pcgplan binary stl", sizeof(header) - 1);
  out.write(header, 80);
  write_u32_le(out, static_cast<uint32_t>(mesh.num_triangles()));
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3& n = mesh.normal(t);
    for (int k = 0; k < 3; ++k) write_f32_le(out, n[k]);
    for (int c = 0; c < 3; ++c) {
      const Vec3& v = mesh.vertex(t, c);
      for (int k = 0; k < 3; ++k) write_f32_le(out, v[k]);
    }
    const uint16_t attr = 0;
    out.write(reinterpret_cast<const char*>(&attr), 2);
  }
  if (!out) throw IoError("failed writing " + path.string());
}

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c) {
  // Voronoi-region walk over vertices, edges and face.
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

double distance_to_mesh(const TriangleMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 q = closest_point_on_triangle(p, mesh.vertex(t, 0),
                                             mesh.vertex(t, 1), mesh.vertex(t, 2));
    best = std::min(best, (p - q).squaredNorm());
  }
  return std::sqrt(best);
}

namespace {
std::map<std::pair<int, int>, int> edge_use(const TriangleMesh& mesh) {
  std::map<std::pair<int, int>, int> uses;
  for (const auto& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      ++uses[{std::min(a, b), std::max(a, b)}];
    }
  }
  return uses;
}
}  // namespace

int euler_characteristic(const TriangleMesh& mesh) {
  std::set<int> used;
  for (const auto& t : mesh.triangles()) used.insert(t.begin(), t.end());
  const auto edges = edge_use(mesh);
  return static_cast<int>(used.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(mesh.num_triangles());
}

bool is_closed(const TriangleMesh& mesh) {
  if (mesh.empty()) return false;
  for (const auto& [edge, count] : edge_use(mesh)) {
    if (count != 2) return false;
  }
  return true;
}

}  // namespace pcgplan
