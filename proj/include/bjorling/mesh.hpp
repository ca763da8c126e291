#pragma once
#include <string>
#include <vector>

#include "bjorling/surface.hpp"

namespace bjorling {

// Wavefront OBJ text for the patch grid: `v x y z` rows in row-major order,
// `f` quads 1-indexed; fixed nine decimal digits, LF line endings. Scalars
// (H, margin) go to a sidecar CSV since OBJ has no per-vertex attributes.
std::string obj_text(const SurfacePatch& patch);
std::string scalar_csv_text(const SurfacePatch& patch);

void write_obj(const SurfacePatch& patch, const std::string& path);
void write_scalar_csv(const SurfacePatch& patch, const std::string& path);

struct ObjMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> quads;  // zero-based
};

ObjMesh read_obj(const std::string& path);

}  // namespace bjorling
