#pragma once

#include "lfmm/core/types.hpp"

namespace lfmm::scene {

// Rigid transform. For a camera pose this maps camera-frame points to world
// coordinates; the camera looks along its +z axis with +x right and +y down.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_inverse(const Vec3& p) const { return rotation.transpose() * (p - translation); }

  Pose inverse() const;
  // (this * other)(p) == this(other(p))
  Pose operator*(const Pose& other) const;

  // Yaw of the body x axis about world z, in (-pi, pi].
  double heading() const;

  static Pose from_rpy(double roll, double pitch, double yaw, const Vec3& t = Vec3::Zero());
  static Pose planar(double x, double y, double yaw);
};

// True if R^T R = I within tol and det R = +1.
bool is_rotation(const Mat3& r, double tol = 1e-9);

Mat3 rot_x(double a);
Mat3 rot_y(double a);
Mat3 rot_z(double a);

// Camera pose at `eye` looking at `target`. `up` is the world up vector; when
// the view direction is (anti)parallel to it an alternate up is used.
Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up = Vec3::UnitZ());

}  // namespace lfmm::scene
