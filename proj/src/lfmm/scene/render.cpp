#include "lfmm/scene/render.hpp"

#include <algorithm>
#include <cmath>

namespace lfmm::scene {

std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                         const Vec3& b, const Vec3& c, double eps) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = dir.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < eps) return std::nullopt;
  const double inv = 1.0 / det;
  const Vec3 s = origin - a;
  const double u = s.dot(p) * inv;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Vec3 q = s.cross(e1);
  const double v = dir.dot(q) * inv;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  const double t = e2.dot(q) * inv;
  if (t <= eps) return std::nullopt;
  return t;
}

DepthView render_depth(const TriMesh& mesh, const Pose& pose, const CameraModel& camera) {
  camera.validate();
  DepthView view{camera, pose, {}};
  const int w = camera.width;
  const int h = camera.height;
  view.depth.assign(static_cast<std::size_t>(w) * h, kNoHit);

  std::vector<Vec3> rays(static_cast<std::size_t>(w) * h);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) rays[static_cast<std::size_t>(v) * w + u] = camera.ray(u, v);

  // Work in the camera frame so the result only depends on the relative
  // placement of mesh and camera.
  std::vector<Vec3> local(mesh.vertices.size());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = pose.apply_inverse(mesh.vertices[i]);

  const double f = camera.focal_px();
  const Vec3 origin = Vec3::Zero();
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Vec3& a = local[mesh.triangles[t][0]];
    const Vec3& b = local[mesh.triangles[t][1]];
    const Vec3& c = local[mesh.triangles[t][2]];
    if (a.z() <= 0.0 && b.z() <= 0.0 && c.z() <= 0.0) continue;

    int u0 = 0, u1 = w - 1, v0 = 0, v1 = h - 1;
    if (a.z() > 1e-9 && b.z() > 1e-9 && c.z() > 1e-9) {
      // Conservative pixel bounds of the projected triangle.
      double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
      for (const Vec3* p : {&a, &b, &c}) {
        const double pu = f * p->x() / p->z() + 0.5 * w - 0.5;
        const double pv = f * p->y() / p->z() + 0.5 * h - 0.5;
        umin = std::min(umin, pu);
        umax = std::max(umax, pu);
        vmin = std::min(vmin, pv);
        vmax = std::max(vmax, pv);
      }
      if (umax < -1.0 || vmax < -1.0 || umin > w || vmin > h) continue;
      u0 = std::max(0, static_cast<int>(std::floor(umin)) - 1);
      u1 = std::min(w - 1, static_cast<int>(std::ceil(umax)) + 1);
      v0 = std::max(0, static_cast<int>(std::floor(vmin)) - 1);
      v1 = std::min(h - 1, static_cast<int>(std::ceil(vmax)) + 1);
    }
    for (int v = v0; v <= v1; ++v) {
      for (int u = u0; u <= u1; ++u) {
        const std::size_t idx = static_cast<std::size_t>(v) * w + u;
        const auto hit = intersect_triangle(origin, rays[idx], a, b, c);
        if (hit && *hit <= camera.max_range && *hit < view.depth[idx]) view.depth[idx] = *hit;
      }
    }
  }
  return view;
}

}  // namespace lfmm::scene
