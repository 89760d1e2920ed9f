#pragma once

#include "lfmm/voxel/grid.hpp"

#include <filesystem>
#include <iosfwd>

namespace lfmm::voxel {

// binvox v1: ASCII header then (value, count) byte pairs, count in 1..255.
// Voxels are serialized in the reference tool's order (x slowest, then z,
// y fastest). "scale" is the side length of the whole grid.
void write_binvox(std::ostream& out, const VoxelGrid& grid);
VoxelGrid read_binvox(std::istream& in);
void save_binvox(const std::filesystem::path& path, const VoxelGrid& grid);
VoxelGrid load_binvox(const std::filesystem::path& path);

}  // namespace lfmm::voxel
