#pragma once

#include "lfmm/core/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lfmm::scene {

struct Pose;

using Triangle = std::array<std::uint32_t, 3>;

// Indexed triangle mesh, coordinates in meters.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;

  bool empty() const { return triangles.empty(); }
  Vec3 corner(std::size_t tri, int k) const { return vertices[triangles[tri][k]]; }
  double triangle_area(std::size_t tri) const;
  double surface_area() const;
  // Signed volume (positive for outward-oriented closed meshes).
  double signed_volume() const;
  // Axis-aligned bounds; {+inf, -inf} when there are no vertices.
  std::pair<Vec3, Vec3> bounds() const;
};

// Throws InvalidArgument if an index is out of range or a coordinate is not
// finite.
void validate(const TriMesh& mesh);

// Drops zero-area triangles. Returns how many were removed.
std::size_t drop_degenerate(TriMesh& mesh, double area_eps = 0.0);

// Applies `pose` (rotation then translation) to every vertex.
TriMesh transformed(const TriMesh& mesh, const Pose& pose);

// Concatenates b onto a.
void append(TriMesh& a, const TriMesh& b);

// ASCII OFF. Polygonal faces are fan-triangulated; zero-area triangles are
// dropped on load and a file whose faces are all degenerate is rejected.
TriMesh read_off(std::istream& in);
TriMesh load_off(const std::filesystem::path& path);
void write_off(std::ostream& out, const TriMesh& mesh);
void save_off(const std::filesystem::path& path, const TriMesh& mesh);

}  // namespace lfmm::scene
