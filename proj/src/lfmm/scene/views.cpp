#include "lfmm/scene/views.hpp"

#include "lfmm/core/error.hpp"

namespace lfmm::scene {

std::vector<double> half_open_range(double start, double end, double stride) {
  if (!(stride > 0.0)) fail(ErrorCode::InvalidArgument, "stride must be positive");
  std::vector<double> values;
  for (long k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * stride;
    if (v >= end) break;
    values.push_back(v);
  }
  return values;
}

std::vector<ViewAngles> enumerate_view_angles(double stride) {
  const auto rolls = half_open_range(0.0, 2.0 * kPi, stride);
  const auto pitches = half_open_range(-0.5 * kPi, 0.5 * kPi, stride);
  const auto yaws = half_open_range(0.0, 2.0 * kPi, stride);
  std::vector<ViewAngles> out;
  out.reserve(rolls.size() * pitches.size() * yaws.size());
  for (double yaw : yaws)
    for (double pitch : pitches)
      for (double roll : rolls) out.push_back({roll, pitch, yaw});
  return out;
}

Pose view_pose(const ViewAngles& angles, double distance) {
  Pose p = Pose::from_rpy(angles.roll, angles.pitch, angles.yaw);
  p.translation = p.rotation * Vec3(0.0, 0.0, -distance);
  return p;
}

std::vector<Pose> enumerate_views(double stride, double distance) {
  std::vector<Pose> poses;
  for (const auto& a : enumerate_view_angles(stride)) poses.push_back(view_pose(a, distance));
  return poses;
}

std::vector<Pose> panorama_poses(const Pose& base) {
  std::vector<Pose> out;
  out.reserve(8);
  for (int k = 0; k < 8; ++k) {
    Pose p = base;
    p.rotation = rot_z(deg2rad(45.0 * k)) * base.rotation;
    out.push_back(p);
  }
  return out;
}

}  // namespace lfmm::scene
