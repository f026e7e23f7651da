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

#ifndef PCGPLAN_CLI_STRUCTURES_H_
#define PCGPLAN_CLI_STRUCTURES_H_

#include <string>
#include <vector>

#include "pcgplan/geometry/mesh.h"

namespace pcgplan {

enum class StructureKind { kBox, kLShape, kTowerAnnex, kCavity };

StructureKind parse_structure_kind(const std::string& name);
const char* structure_kind_name(StructureKind kind);

// Closed, outward-oriented meshes resting on z = 0. Empty `dims` selects the
// defaults; otherwise every dimension must be given and positive.
//   box          w d h                          (20 20 30)
//   l-shape      x y h thickness                (30 30 20 12)
//   tower+annex  tower_w depth tower_h annex_len annex_h  (12 12 40 20 12)
//   cavity       outer inner  (cubes, inner centred, faces the void)  (10 4)
// Throws ConfigError on invalid dims.
TriangleMesh make_structure(StructureKind kind, const std::vector<double>& dims = {});

TriangleMesh make_box(const Vec3& min, const Vec3& max);
// Extrudes a counter-clockwise simple polygon, fan-triangulated from its first
// vertex (which must see every other vertex), from z = 0 to z = height.
TriangleMesh extrude_polygon(const std::vector<Eigen::Vector2d>& polygon, double height);

// Sum of signed tetrahedron volumes; positive for outward-oriented meshes.
double signed_volume(const TriangleMesh& mesh);

}  // namespace pcgplan

#endif  // PCGPLAN_CLI_STRUCTURES_H_
