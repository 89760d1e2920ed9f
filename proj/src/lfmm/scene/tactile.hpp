#pragma once

#include "lfmm/core/types.hpp"
#include "lfmm/voxel/grid.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace lfmm::scene {

// Tactile contacts in grid units; unique, each inside [0, dim).
struct TactileSet {
  std::vector<Voxel> contacts;
};

// First occupied voxel when scanning column (x, y) from z = dim-1 downward.
std::optional<Voxel> first_contact(const voxel::VoxelGrid& ground_truth, int x, int y);

// Probes the given (x, y) columns in order; duplicate contacts are dropped.
TactileSet probe_columns(const voxel::VoxelGrid& ground_truth,
                         const std::vector<std::pair<int, int>>& columns);

// Samples `npts` random columns (x and y uniform over [0, dim-1]) and probes
// each from the top of the grid.
TactileSet sample_tactile(const voxel::VoxelGrid& ground_truth, int npts = 40,
                          std::uint64_t seed = 0);

enum class HalfShapeKind { Sphere, Cube, Diamond };

HalfShapeKind parse_half_shape_kind(const std::string& name);
const char* to_string(HalfShapeKind kind);

// A conjoined half-shape in a 40^3 grid: the front half (low z, facing the
// camera) and the back half share one size. Tactile rays start at
// (13,20,40), (20,20,40) and (26,20,40) and travel in -z.
struct HalfShape {
  voxel::VoxelGrid grid;
  std::array<std::optional<Voxel>, 3> ray_contacts;
};

inline constexpr std::array<std::array<int, 2>, 3> kHalfShapeRays = {{{13, 20}, {20, 20}, {26, 20}}};

// `size` is the full extent in voxels. The seed shifts the shape center in x
// and y by up to 3 voxels.
HalfShape make_half_shape(HalfShapeKind front, HalfShapeKind back, int size, std::uint64_t seed);
// Same with an explicit center shift (in voxels) from the grid center.
HalfShape make_half_shape_at(HalfShapeKind front, HalfShapeKind back, int size, int shift_x,
                             int shift_y);

}  // namespace lfmm::scene
