#include "lfmm/scene/camera.hpp"

#include "lfmm/core/error.hpp"

#include <cmath>

namespace lfmm::scene {

void CameraModel::validate() const {
  if (width <= 0 || height <= 0) fail(ErrorCode::InvalidArgument, "camera size must be positive");
  if (!(vertical_fov > 0.0 && vertical_fov < kPi)) {
    fail(ErrorCode::InvalidArgument, "camera fov must be in (0, pi)");
  }
  if (!(max_range > 0.0)) fail(ErrorCode::InvalidArgument, "camera max_range must be positive");
}

double CameraModel::focal_px() const { return 0.5 * height / std::tan(0.5 * vertical_fov); }

Vec3 CameraModel::ray(int u, int v) const {
  const double f = focal_px();
  return Vec3((u + 0.5 - 0.5 * width) / f, (v + 0.5 - 0.5 * height) / f, 1.0).normalized();
}

std::size_t DepthView::finite_count() const {
  std::size_t n = 0;
  for (double d : depth) n += std::isfinite(d) ? 1 : 0;
  return n;
}

std::vector<Vec3> DepthView::camera_points() const {
  std::vector<Vec3> pts;
  for (int v = 0; v < camera.height; ++v) {
    for (int u = 0; u < camera.width; ++u) {
      const double d = at(u, v);
      if (std::isfinite(d)) pts.push_back(d * camera.ray(u, v));
    }
  }
  return pts;
}

std::vector<Vec3> DepthView::world_points() const {
  auto pts = camera_points();
  for (Vec3& p : pts) p = pose.apply(p);
  return pts;
}

}  // namespace lfmm::scene
