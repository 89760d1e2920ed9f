#pragma once

#include "lfmm/core/types.hpp"
#include "lfmm/voxel/grid.hpp"

#include <optional>
#include <vector>

namespace lfmm::nbv {

struct UncertaintySpec {
  double center = 0.5;
  double epsilon = 0.025;

  void validate() const;
};

// Voxels with score in [center - epsilon, center + epsilon], index order.
std::vector<Voxel> uncertain_voxels(const voxel::VoxelGrid& scores, const UncertaintySpec& spec = {});

// Mean center of the voxels scoring at least `threshold`; nullopt if none.
std::optional<Vec3> score_centroid(const voxel::VoxelGrid& scores, double threshold);

struct PrincipalAxes {
  Vec3 centroid;
  Vec3 eigenvalues;   // ascending
  Mat3 eigenvectors;  // column k pairs with eigenvalues[k]
};

// PCA of the centered (population) covariance. Throws DegenerateSet for
// fewer than 3 points or when the points are collinear (rank < 2).
PrincipalAxes principal_axes(const std::vector<Vec3>& points);

// Chooses the sign of `axis` so that it points away from the camera in the
// horizontal plane. When the horizontal test is inconclusive the full 3D
// direction decides, then the offset of `tiebreak` from the object centroid.
Vec3 orient_away(const Vec3& axis, const Vec3& object_centroid, const Vec3& camera,
                 const Vec3& tiebreak);

// Minimal-variance axis of the uncertain voxel centers in the grid's frame,
// oriented away from `camera` (same frame; the camera origin by default).
// `object_centroid` defaults to the centroid of the uncertain set.
Vec3 next_best_view(const std::vector<Voxel>& uncertain, const voxel::GridFrame& frame,
                    const Vec3& camera = Vec3::Zero(),
                    const std::optional<Vec3>& object_centroid = std::nullopt);

struct HeightLimits {
  double min = 0.1;
  double max = 1.1;
};

struct NbvTarget {
  Vec3 v_nbv;
  Vec3 planar_target;  // (x, y, 0) relative to the object
  double torso_height = 0.0;
  double head_angle = 0.0;
};

// Planar target at `standoff` along the horizontal part of v, head pitch
// atan2(v.z, |v.xy|) and the head height that keeps the centroid on the
// viewing ray, clamped to `limits`. Throws NearVertical when |v.xy| < 1e-6.
NbvTarget nbv_target(const Vec3& v_nbv, const Vec3& object_centroid, double standoff = 0.5,
                     const HeightLimits& limits = {});

// nbv_target with fallbacks for a near-vertical axis: the second principal
// axis, and failing that the azimuth opposite the current camera.
NbvTarget plan_target(const PrincipalAxes& axes, const Vec3& object_centroid, const Vec3& camera,
                      double standoff = 0.5, const HeightLimits& limits = {});

}  // namespace lfmm::nbv
