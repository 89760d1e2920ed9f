#include "lfmm/voxel/carve.hpp"

#include "lfmm/voxel/traversal.hpp"

#include <cmath>

namespace lfmm::voxel {

VoxelGrid carve_free_space(const VoxelGrid& scores, const scene::DepthView& view) {
  VoxelGrid out = scores;
  const auto& cam = view.camera;
  std::vector<std::uint8_t> surface(out.size(), 0);
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const double d = view.at(u, v);
      if (!std::isfinite(d)) continue;
      if (auto vox = out.locate(d * cam.ray(u, v))) surface[out.index(*vox)] = 1;
    }
  }
  const Vec3 origin = Vec3::Zero();
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const double d = view.at(u, v);
      const double limit = std::isfinite(d) ? d : cam.max_range;
      traverse_ray(out.frame, out.dim, origin, cam.ray(u, v), limit,
                   [&](const Voxel& vox, double, double t_exit) {
                     const std::size_t idx = out.index(vox);
                     if (!surface[idx] && t_exit < limit) out.scores[idx] = 0.0;
                     return true;
                   });
    }
  }
  return out;
}

}  // namespace lfmm::voxel
