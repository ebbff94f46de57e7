#pragma once

// Mesh export: ASCII OBJ (v/f, 1-based, counterclockwise; boundary tags as
// groups of line elements) and binary little-endian PLY (float64 vertices).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "dihedral/builder.hpp"

namespace dihedral::mesh {

namespace io_detail {

inline void write_atomic(const std::filesystem::path& target,
                         const std::string& payload, bool binary) {
  namespace fs = std::filesystem;
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, binary ? std::ios::binary : std::ios::out);
    if (!out)
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace io_detail

inline void write_obj(const SurfaceMesh& mesh,
                      const std::filesystem::path& path,
                      const std::string& header_note = {}) {
  std::string out;
  out += "# dihedral-forge mesh\n";
  if (!header_note.empty()) out += "# " + header_note + "\n";
  for (const Vec3& v : mesh.vertices) {
    out += "v " + io_detail::fmt_double(v[0]) + " " +
           io_detail::fmt_double(v[1]) + " " + io_detail::fmt_double(v[2]) +
           "\n";
  }
  out += "g surface\n";
  for (const auto& t : mesh.triangles) {
    out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) +
           " " + std::to_string(t[2] + 1) + "\n";
  }
  std::map<std::string, std::vector<const BoundaryEdge*>> by_tag;
  for (const auto& e : mesh.boundary) by_tag[e.tag].push_back(&e);
  for (const auto& [tag, edges] : by_tag) {
    out += "g plane_" + tag + "\n";
    for (const auto* e : edges)
      out += "l " + std::to_string(e->v0 + 1) + " " +
             std::to_string(e->v1 + 1) + "\n";
  }
  io_detail::write_atomic(path, out, false);
}

inline void write_ply(const SurfaceMesh& mesh,
                      const std::filesystem::path& path) {
  std::string out;
  out += "ply\nformat binary_little_endian 1.0\n";
  out += "comment dihedral-forge mesh\n";
  out += "element vertex " + std::to_string(mesh.vertices.size()) + "\n";
  out += "property double x\nproperty double y\nproperty double z\n";
  out += "element face " + std::to_string(mesh.triangles.size()) + "\n";
  out += "property list uchar int32 vertex_indices\n";
  out += "end_header\n";
  auto push_raw = [&out](const void* p, std::size_t n) {
    out.append(static_cast<const char*>(p), n);
  };
  static_assert(sizeof(double) == 8);
  for (const Vec3& v : mesh.vertices) {
    push_raw(&v[0], 8);
    push_raw(&v[1], 8);
    push_raw(&v[2], 8);
  }
  for (const auto& t : mesh.triangles) {
    const std::uint8_t n = 3;
    push_raw(&n, 1);
    for (int k = 0; k < 3; ++k) {
      const std::int32_t idx = t[k];
      push_raw(&idx, 4);
    }
  }
  io_detail::write_atomic(path, out, true);
}

// dispatch by extension (.obj / .ply)
inline void write_mesh(const SurfaceMesh& mesh,
                       const std::filesystem::path& path,
                       const std::string& header_note = {}) {
  const std::string ext = path.extension().string();
  if (ext == ".obj")
    write_obj(mesh, path, header_note);
  else if (ext == ".ply")
    write_ply(mesh, path);
  else
    throw std::invalid_argument("write_mesh: unsupported extension " + ext);
}

// Euler characteristic V - E + F of the triangulation.
inline int euler_characteristic(const SurfaceMesh& mesh) {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      edges.insert({a, b});
    }
  return static_cast<int>(mesh.vertices.size()) -
         static_cast<int>(edges.size()) +
         static_cast<int>(mesh.triangles.size());
}

}  // namespace dihedral::mesh
