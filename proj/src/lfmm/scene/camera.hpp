#pragma once

#include "lfmm/core/types.hpp"
#include "lfmm/scene/pose.hpp"

#include <limits>
#include <vector>

namespace lfmm::scene {

// Pinhole camera with square pixels; rays pass through pixel centers.
struct CameraModel {
  int width = 480;
  int height = 480;
  double vertical_fov = deg2rad(45.0);
  double max_range = 3.0;

  void validate() const;
  double focal_px() const;
  // Unit ray direction in the camera frame through the center of pixel (u, v),
  // u along +x (columns), v along +y (rows, top to bottom).
  Vec3 ray(int u, int v) const;
};

inline constexpr double kNoHit = std::numeric_limits<double>::infinity();

// Depth raster: range along each pixel ray in meters, kNoHit where nothing
// was hit. Row-major, row 0 at the top of the image.
struct DepthView {
  CameraModel camera;
  Pose pose;
  std::vector<double> depth;

  double at(int u, int v) const { return depth[static_cast<std::size_t>(v) * camera.width + u]; }
  std::size_t finite_count() const;
  // Back-projected hit points in the camera frame.
  std::vector<Vec3> camera_points() const;
  // Back-projected hit points in world coordinates.
  std::vector<Vec3> world_points() const;
};

}  // namespace lfmm::scene
