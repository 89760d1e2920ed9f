#include "lfmm/nbv/nbv.hpp"

#include "lfmm/core/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace lfmm::nbv {

namespace {
constexpr double kVerticalEps = 1e-6;
}

void UncertaintySpec::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 0.5)");
  if (!(center >= 0.0 && center <= 1.0)) fail(ErrorCode::InvalidArgument, "center must lie in [0, 1]");
}

std::vector<Voxel> uncertain_voxels(const voxel::VoxelGrid& g, const UncertaintySpec& spec) {
  spec.validate();
  std::vector<Voxel> out;
  const double lo = spec.center - spec.epsilon, hi = spec.center + spec.epsilon;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.scores[i] >= lo && g.scores[i] <= hi) out.push_back(g.voxel_of(i));
  return out;
}

PrincipalAxes principal_axes(const std::vector<Vec3>& pts) {
  if (pts.size() < 3) fail(ErrorCode::DegenerateSet, "PCA needs at least 3 points");
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Mat3 cov = Mat3::Zero();
  for (const Vec3& p : pts) cov += (p - c) * (p - c).transpose();
  cov /= static_cast<double>(pts.size());

  Eigen::SelfAdjointEigenSolver<Mat3> es(cov);
  if (es.info() != Eigen::Success) fail(ErrorCode::DegenerateSet, "eigen decomposition failed");
  const Vec3 ev = es.eigenvalues();
  const double scale = std::max(ev[2], 0.0);
  if (scale <= 0.0 || ev[1] <= 1e-12 * scale) fail(ErrorCode::DegenerateSet, "points are collinear");
  return {c, ev, es.eigenvectors()};
}

std::optional<Vec3> score_centroid(const voxel::VoxelGrid& g, double threshold) {
  Vec3 sum = Vec3::Zero();
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.scores[i] >= threshold) {
      sum += g.center(g.voxel_of(i));
      ++n;
    }
  if (n == 0) return std::nullopt;
  return Vec3(sum / static_cast<double>(n));
}

Vec3 orient_away(const Vec3& axis, const Vec3& obj, const Vec3& camera, const Vec3& tiebreak) {
  const Vec3 to_cam = camera - obj;
  const double tol = 1e-9 * axis.norm() * std::max(1.0, to_cam.norm());
  const double planar = axis.head<2>().dot(to_cam.head<2>());
  if (std::abs(planar) > tol) return planar < 0.0 ? axis : Vec3(-axis);
  const double full = axis.dot(to_cam);
  if (std::abs(full) > tol) return full < 0.0 ? axis : Vec3(-axis);
  const double t = axis.dot(tiebreak - obj);
  if (t != 0.0) return t > 0.0 ? axis : Vec3(-axis);
  for (int a = 0; a < 3; ++a)
    if (axis[a] != 0.0) return axis[a] > 0.0 ? axis : Vec3(-axis);
  return axis;
}

Vec3 next_best_view(const std::vector<Voxel>& uncertain, const voxel::GridFrame& frame,
                    const Vec3& camera, const std::optional<Vec3>& object_centroid) {
  std::vector<Vec3> pts;
  pts.reserve(uncertain.size());
  for (const Voxel& v : uncertain) pts.push_back(voxel::voxel_center(frame, v));
  const PrincipalAxes ax = principal_axes(pts);
  const Vec3 obj = object_centroid.value_or(ax.centroid);
  return orient_away(ax.eigenvectors.col(0).normalized(), obj, camera, ax.centroid);
}

NbvTarget nbv_target(const Vec3& v, const Vec3& c, double standoff, const HeightLimits& limits) {
  if (std::abs(v.norm() - 1.0) > 1e-9) fail(ErrorCode::InvalidArgument, "v_nbv must be a unit vector");
  if (!(standoff > 0.0)) fail(ErrorCode::InvalidArgument, "standoff must be positive");
  if (!(limits.min <= limits.max)) fail(ErrorCode::InvalidArgument, "height limits are inverted");
  const double horiz = v.head<2>().norm();
  if (horiz < kVerticalEps) fail(ErrorCode::NearVertical, "NBV axis is near vertical");
  NbvTarget t;
  t.v_nbv = v;
  t.planar_target = Vec3(v.x() / horiz * standoff, v.y() / horiz * standoff, 0.0);
  t.head_angle = std::atan2(v.z(), horiz);
  t.torso_height = std::clamp(c.z() - standoff * std::tan(t.head_angle), limits.min, limits.max);
  return t;
}

NbvTarget plan_target(const PrincipalAxes& ax, const Vec3& obj, const Vec3& camera, double standoff,
                      const HeightLimits& limits) {
  for (int k = 0; k < 2; ++k) {
    const Vec3 v = orient_away(ax.eigenvectors.col(k).normalized(), obj, camera, ax.centroid);
    if (v.head<2>().norm() >= kVerticalEps) return nbv_target(v, obj, standoff, limits);
  }
  Vec3 away = obj - camera;
  away.z() = 0.0;
  if (away.norm() < kVerticalEps) fail(ErrorCode::NearVertical, "camera is above the object; no opposite azimuth");
  return nbv_target(away.normalized(), obj, standoff, limits);
}

}  // namespace lfmm::nbv
