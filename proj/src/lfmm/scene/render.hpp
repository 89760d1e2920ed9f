#pragma once

#include "lfmm/scene/camera.hpp"
#include "lfmm/scene/mesh.hpp"

#include <optional>

namespace lfmm::scene {

// Moller-Trumbore ray/triangle test. Returns the ray parameter of a hit with
// t > eps, or nullopt. Edges and vertices count as hits.
std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                         const Vec3& b, const Vec3& c, double eps = 1e-9);

// Ray casts `mesh` from `pose`. Each pixel keeps the nearest hit within
// max_range; equal distances keep the lowest triangle index.
DepthView render_depth(const TriMesh& mesh, const Pose& pose, const CameraModel& camera);

}  // namespace lfmm::scene
