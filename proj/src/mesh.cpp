#include "bjorling/mesh.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bjorling {

namespace {

void append_fixed(std::string& out, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  out += buf;
}

}  // namespace

std::string obj_text(const SurfacePatch& patch) {
  if (patch.nu < 2 || patch.nv < 2)
    fail(ErrorCode::ValidationFailed, "cannot export an empty patch");
  std::string out;
  out.reserve(patch.positions.size() * 48);
  for (const Vec3& p : patch.positions) {
    out += "v ";
    append_fixed(out, p.x);
    out += ' ';
    append_fixed(out, p.y);
    out += ' ';
    append_fixed(out, p.z);
    out += '\n';
  }
  for (int j = 0; j + 1 < patch.nv; ++j) {
    for (int i = 0; i + 1 < patch.nu; ++i) {
      int a = patch.index(i, j) + 1;
      int b = patch.index(i + 1, j) + 1;
      int c = patch.index(i + 1, j + 1) + 1;
      int d = patch.index(i, j + 1) + 1;
      out += "f " + std::to_string(a) + ' ' + std::to_string(b) + ' ' +
             std::to_string(c) + ' ' + std::to_string(d) + '\n';
    }
  }
  return out;
}

std::string scalar_csv_text(const SurfacePatch& patch) {
  std::string out = "vertex_index,H,margin\n";
  for (size_t i = 0; i < patch.positions.size(); ++i) {
    out += std::to_string(i) + ',';
    append_fixed(out, patch.H[i]);
    out += ',';
    append_fixed(out, patch.margin[i]);
    out += '\n';
  }
  return out;
}

namespace {
void write_text(const std::string& text, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) fail(ErrorCode::IoError, "short write to '" + path + "'");
}
}  // namespace

void write_obj(const SurfacePatch& patch, const std::string& path) {
  write_text(obj_text(patch), path);
}

void write_scalar_csv(const SurfacePatch& patch, const std::string& path) {
  write_text(scalar_csv_text(patch), path);
}

ObjMesh read_obj(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  ObjMesh mesh;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Vec3 p;
      if (!(ss >> p.x >> p.y >> p.z))
        fail(ErrorCode::ParseError, "bad vertex at line " + std::to_string(lineno));
      mesh.vertices.push_back(p);
    } else if (tag == "f") {
      std::array<int, 4> q{};
      if (!(ss >> q[0] >> q[1] >> q[2] >> q[3]))
        fail(ErrorCode::ParseError, "bad quad at line " + std::to_string(lineno));
      for (int& idx : q) {
        idx -= 1;
        if (idx < 0 || idx >= static_cast<int>(mesh.vertices.size()))
          fail(ErrorCode::ParseError,
               "face index out of range at line " + std::to_string(lineno));
      }
      mesh.quads.push_back(q);
    }
  }
  return mesh;
}

}  // namespace bjorling
