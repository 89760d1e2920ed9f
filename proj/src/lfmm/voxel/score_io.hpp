#pragma once

#include "lfmm/voxel/grid.hpp"

#include <filesystem>
#include <iosfwd>

namespace lfmm::voxel {

// Score grids keep their full values, so they cannot use binvox. Layout: a
// binvox-like ASCII header with magic "#lfmm-scores 1", "dim", "translate"
// and "scale" lines, "data", then dim^3 little-endian float64 scores with x
// fastest.
void write_scores(std::ostream& out, const VoxelGrid& grid);
VoxelGrid read_scores(std::istream& in);
void save_scores(const std::filesystem::path& path, const VoxelGrid& grid);
VoxelGrid load_scores(const std::filesystem::path& path);

// Loads a binvox or score file, chosen by the first line.
VoxelGrid load_grid(const std::filesystem::path& path);

}  // namespace lfmm::voxel
