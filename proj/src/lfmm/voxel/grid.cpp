#include "lfmm/voxel/grid.hpp"

#include "lfmm/core/error.hpp"

#include <cmath>

namespace lfmm::voxel {

VoxelGrid::VoxelGrid(int dim_, const GridFrame& frame_, double fill)
    : dim(dim_), frame(frame_) {
  if (dim <= 0) fail(ErrorCode::InvalidArgument, "grid dim must be positive");
  if (!(frame.voxel_size > 0.0)) fail(ErrorCode::InvalidArgument, "voxel size must be positive");
  scores.assign(static_cast<std::size_t>(dim) * dim * dim, fill);
}

Voxel VoxelGrid::voxel_of(std::size_t idx) const {
  const auto d = static_cast<std::size_t>(dim);
  return {static_cast<int>(idx % d), static_cast<int>((idx / d) % d), static_cast<int>(idx / (d * d))};
}

Vec3 VoxelGrid::center(const Voxel& v) const { return voxel_center(frame, v); }

std::optional<Voxel> VoxelGrid::locate(const Vec3& p) const {
  const Voxel v = world_to_voxel(frame, p);
  if (!in_bounds(v)) return std::nullopt;
  return v;
}

std::size_t VoxelGrid::occupied_count(double threshold) const {
  std::size_t n = 0;
  for (double s : scores) n += s > threshold ? 1 : 0;
  return n;
}

std::vector<Voxel> VoxelGrid::occupied_voxels(double threshold) const {
  std::vector<Voxel> out;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] > threshold) out.push_back(voxel_of(i));
  return out;
}

bool VoxelGrid::is_binary() const {
  for (double s : scores)
    if (s != 0.0 && s != 1.0) return false;
  return true;
}

VoxelGrid VoxelGrid::binarized(double threshold) const {
  VoxelGrid out = *this;
  for (double& s : out.scores) s = s > threshold ? 1.0 : 0.0;
  return out;
}

Voxel world_to_voxel(const GridFrame& frame, const Vec3& p) {
  const Vec3 g = (p - frame.origin) / frame.voxel_size;
  return {static_cast<int>(std::floor(g.x())), static_cast<int>(std::floor(g.y())),
          static_cast<int>(std::floor(g.z()))};
}

Vec3 voxel_center(const GridFrame& frame, const Voxel& v) {
  return frame.origin + frame.voxel_size * Vec3(v[0] + 0.5, v[1] + 0.5, v[2] + 0.5);
}

void require_same_frame(const VoxelGrid& a, const VoxelGrid& b) {
  if (a.dim != b.dim) fail(ErrorCode::FrameMismatch, "grid dimensions differ");
  if (!((a.frame.origin - b.frame.origin).cwiseAbs().maxCoeff() <= 1e-12) ||
      !(std::abs(a.frame.voxel_size - b.frame.voxel_size) <= 1e-15)) {
    fail(ErrorCode::FrameMismatch, "grid frames differ");
  }
}

}  // namespace lfmm::voxel
