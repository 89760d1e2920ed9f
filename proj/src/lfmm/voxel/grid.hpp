#pragma once

#include "lfmm/core/types.hpp"

#include <optional>
#include <vector>

namespace lfmm::voxel {

inline constexpr int kDefaultDim = 40;

// Side length of one voxel under fixed-scale voxelization: 0.3 m spans
// dim - 2 voxels, leaving a one-voxel margin.
inline constexpr double fixed_voxel_size(int dim = kDefaultDim) { return 0.3 / (dim - 2); }

// World placement of a grid: `origin` is the position of voxel (0,0,0)'s
// minimum corner.
struct GridFrame {
  Vec3 origin = Vec3::Zero();
  double voxel_size = fixed_voxel_size();

  bool operator==(const GridFrame&) const = default;
};

// dim^3 occupancy scores in [0, 1], x fastest, z slowest.
struct VoxelGrid {
  int dim = kDefaultDim;
  GridFrame frame;
  std::vector<double> scores;

  VoxelGrid() = default;
  VoxelGrid(int dim, const GridFrame& frame, double fill = 0.0);

  std::size_t size() const { return scores.size(); }
  std::size_t index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) + static_cast<std::size_t>(dim) *
                                             (static_cast<std::size_t>(y) +
                                              static_cast<std::size_t>(dim) * static_cast<std::size_t>(z));
  }
  std::size_t index(const Voxel& v) const { return index(v[0], v[1], v[2]); }
  Voxel voxel_of(std::size_t idx) const;

  double& at(int x, int y, int z) { return scores[index(x, y, z)]; }
  double at(int x, int y, int z) const { return scores[index(x, y, z)]; }
  double& at(const Voxel& v) { return scores[index(v)]; }
  double at(const Voxel& v) const { return scores[index(v)]; }

  bool in_bounds(int x, int y, int z) const {
    return x >= 0 && y >= 0 && z >= 0 && x < dim && y < dim && z < dim;
  }
  bool in_bounds(const Voxel& v) const { return in_bounds(v[0], v[1], v[2]); }

  Vec3 center(const Voxel& v) const;
  // Voxel containing p (floor of grid coordinates), if inside the grid.
  std::optional<Voxel> locate(const Vec3& p) const;

  bool occupied(const Voxel& v, double threshold = 0.5) const { return at(v) > threshold; }
  std::size_t occupied_count(double threshold = 0.5) const;
  std::vector<Voxel> occupied_voxels(double threshold = 0.5) const;
  bool is_binary() const;
  // Scores > threshold become 1, everything else 0.
  VoxelGrid binarized(double threshold = 0.5) const;
};

// Voxel containing `p` in `frame` (may lie outside any particular grid).
Voxel world_to_voxel(const GridFrame& frame, const Vec3& p);
Vec3 voxel_center(const GridFrame& frame, const Voxel& v);

// Throws FrameMismatch unless a and b share dim and frame.
void require_same_frame(const VoxelGrid& a, const VoxelGrid& b);

}  // namespace lfmm::voxel
