#pragma once

#include "lfmm/core/types.hpp"

#include <cstdint>
#include <vector>

namespace lfmm::scene {

struct TabletopParams {
  double near = 0.3;  // meters, horizontal distance from the robot
  double far = 0.7;
  int iterations = 200;
  double inlier_tol = 0.005;
  double min_inlier_fraction = 0.3;
  // Candidate planes need |n . z| above this to count as parallel to the base.
  double min_vertical_alignment = 0.95;
  std::uint64_t seed = 0;
};

struct TabletopSegmentation {
  // (a, b, c, d) with unit normal (a, b, c) pointing up: a x + b y + c z + d = 0.
  Eigen::Vector4d plane;
  std::vector<Vec3> object_points;
  std::size_t inliers = 0;
};

double plane_signed_distance(const Eigen::Vector4d& plane, const Vec3& p);

// Keeps points whose horizontal distance from the robot (origin) is within
// [near, far], fits the dominant near-horizontal plane by random sampling
// consensus and returns everything above it by more than inlier_tol.
// Throws NoPlaneFound if no plane reaches min_inlier_fraction of the band.
TabletopSegmentation segment_tabletop(const std::vector<Vec3>& cloud, const TabletopParams& params = {});

}  // namespace lfmm::scene
