#pragma once

#include "lfmm/core/types.hpp"
#include "lfmm/scene/mesh.hpp"
#include "lfmm/voxel/grid.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace lfmm::metrics {

// |A and B| / |A or B| over voxels scoring above 0.5; 1 when both are empty.
// Throws FrameMismatch unless both grids share dim and frame.
double jaccard(const voxel::VoxelGrid& a, const voxel::VoxelGrid& b);

// Closest point on triangle abc to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Bounding volume hierarchy for point-to-surface queries.
class SurfaceIndex {
 public:
  explicit SurfaceIndex(const scene::TriMesh& mesh);
  ~SurfaceIndex();
  SurfaceIndex(SurfaceIndex&&) noexcept;
  SurfaceIndex& operator=(SurfaceIndex&&) noexcept;

  double distance(const Vec3& p) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Area-weighted uniform samples on the surface.
std::vector<Vec3> sample_surface(const scene::TriMesh& mesh, int samples, std::uint64_t seed);

// Mean distance from `samples` points on a to the surface of b, and the
// reverse, averaged, in millimeters. Both directions draw with the same seed
// so the measure is symmetric in its arguments. Throws EmptyMesh when either
// mesh has no area.
double hausdorff_symmetric(const scene::TriMesh& a, const scene::TriMesh& b, int samples = 10000,
                           std::uint64_t seed = 0);

struct Episode {
  bool success = false;
  double optimal_length = 0.0;  // l
  double path_length = 0.0;     // p
  std::optional<bool> pick_success;
};

double success_rate(const std::vector<Episode>& episodes);
// (1/N) sum S_i l_i / max(p_i, l_i)
double spl(const std::vector<Episode>& episodes);
// SPL with the pick outcome in place of S_i; every episode needs one.
double e2espl(const std::vector<Episode>& episodes);
// Mean of max(p, l) / l over successes. Throws NoSuccesses without any.
double oor(const std::vector<Episode>& episodes);

}  // namespace lfmm::metrics
