#include "lfmm/scene/pose.hpp"

#include <cmath>

namespace lfmm::scene {

Pose Pose::inverse() const {
  Pose inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation);
  return inv;
}

Pose Pose::operator*(const Pose& other) const {
  Pose out;
  out.rotation = rotation * other.rotation;
  out.translation = rotation * other.translation + translation;
  return out;
}

double Pose::heading() const { return std::atan2(rotation(1, 0), rotation(0, 0)); }

Pose Pose::from_rpy(double roll, double pitch, double yaw, const Vec3& t) {
  Pose p;
  p.rotation = rot_z(yaw) * rot_y(pitch) * rot_x(roll);
  p.translation = t;
  return p;
}

Pose Pose::planar(double x, double y, double yaw) {
  Pose p;
  p.rotation = rot_z(yaw);
  p.translation = Vec3(x, y, 0.0);
  return p;
}

bool is_rotation(const Mat3& r, double tol) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(r.determinant() - 1.0) <= tol;
}

Mat3 rot_x(double a) {
  return Eigen::AngleAxisd(a, Vec3::UnitX()).toRotationMatrix();
}
Mat3 rot_y(double a) {
  return Eigen::AngleAxisd(a, Vec3::UnitY()).toRotationMatrix();
}
Mat3 rot_z(double a) {
  return Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix();
}

Pose look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
  const Vec3 forward = (target - eye).normalized();
  Vec3 right = forward.cross(up);
  if (right.norm() < 1e-9) {
    // Looking straight along `up`: pick any perpendicular.
    right = forward.cross(std::abs(forward.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY());
  }
  right.normalize();
  const Vec3 down = forward.cross(right);
  Pose p;
  p.rotation.col(0) = right;
  p.rotation.col(1) = down;
  p.rotation.col(2) = forward;
  p.translation = eye;
  return p;
}

}  // namespace lfmm::scene
