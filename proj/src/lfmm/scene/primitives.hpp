#pragma once

#include "lfmm/scene/mesh.hpp"

#include <string>

namespace lfmm::scene {

// Closed, outward-oriented primitives centered at the origin.
TriMesh make_box(const Vec3& size);
TriMesh make_ellipsoid(const Vec3& radii, int slices = 32, int stacks = 16);
TriMesh make_sphere(double radius, int slices = 32, int stacks = 16);
TriMesh make_cylinder(double radius, double height, int slices = 32);
TriMesh make_cone(double radius, double height, int slices = 32);
// Regular octahedron with vertices at distance `radius` along each axis.
TriMesh make_octahedron(double radius);

// Parses "box:sx,sy,sz", "sphere:r", "ellipsoid:rx,ry,rz", "cylinder:r,h",
// "cone:r,h" or "octahedron:r".
TriMesh make_primitive(const std::string& spec);

}  // namespace lfmm::scene
