#include "lfmm/scene/tabletop.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/core/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace lfmm::scene {

double plane_signed_distance(const Eigen::Vector4d& plane, const Vec3& p) {
  return plane.head<3>().dot(p) + plane[3];
}

namespace {

// Least-squares plane through points, normal oriented to +z.
Eigen::Vector4d refit(const std::vector<Vec3>& pts) {
  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Mat3 cov = Mat3::Zero();
  for (const Vec3& p : pts) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> es(cov);
  Vec3 n = es.eigenvectors().col(0);
  if (n.z() < 0.0) n = -n;
  return {n.x(), n.y(), n.z(), -n.dot(mean)};
}

}  // namespace

TabletopSegmentation segment_tabletop(const std::vector<Vec3>& cloud, const TabletopParams& params) {
  if (cloud.empty()) fail(ErrorCode::InvalidArgument, "tabletop cloud is empty");
  std::vector<Vec3> band;
  for (const Vec3& p : cloud) {
    const double r = std::hypot(p.x(), p.y());
    if (r >= params.near && r <= params.far) band.push_back(p);
  }
  if (band.size() < 3) fail(ErrorCode::NoPlaneFound, "fewer than 3 points inside the distance band");

  CounterRng rng(params.seed);
  const auto n = static_cast<std::int64_t>(band.size());
  std::size_t best_count = 0;
  Eigen::Vector4d best_plane = Eigen::Vector4d::Zero();
  for (int it = 0; it < params.iterations; ++it) {
    const Vec3& a = band[static_cast<std::size_t>(rng.uniform_int(0, n - 1))];
    const Vec3& b = band[static_cast<std::size_t>(rng.uniform_int(0, n - 1))];
    const Vec3& c = band[static_cast<std::size_t>(rng.uniform_int(0, n - 1))];
    Vec3 normal = (b - a).cross(c - a);
    if (normal.norm() < 1e-12) continue;
    normal.normalize();
    if (std::abs(normal.z()) <= params.min_vertical_alignment) continue;
    if (normal.z() < 0.0) normal = -normal;
    const Eigen::Vector4d plane(normal.x(), normal.y(), normal.z(), -normal.dot(a));
    std::size_t count = 0;
    for (const Vec3& p : band) count += std::abs(plane_signed_distance(plane, p)) <= params.inlier_tol;
    if (count > best_count) {
      best_count = count;
      best_plane = plane;
    }
  }
  if (best_count == 0 ||
      static_cast<double>(best_count) < params.min_inlier_fraction * static_cast<double>(band.size())) {
    fail(ErrorCode::NoPlaneFound, "no horizontal plane reached the minimum inlier fraction");
  }

  std::vector<Vec3> inliers;
  for (const Vec3& p : band)
    if (std::abs(plane_signed_distance(best_plane, p)) <= params.inlier_tol) inliers.push_back(p);
  Eigen::Vector4d plane = refit(inliers);
  if (std::abs(plane.z()) <= params.min_vertical_alignment) plane = best_plane;

  TabletopSegmentation out{plane, {}, inliers.size()};
  for (const Vec3& p : band)
    if (plane_signed_distance(plane, p) > params.inlier_tol) out.object_points.push_back(p);
  return out;
}

}  // namespace lfmm::scene
