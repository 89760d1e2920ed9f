#pragma once

#include "lfmm/scene/mesh.hpp"
#include "lfmm/voxel/grid.hpp"

#include <array>
#include <vector>

namespace lfmm::meshgen {

// Cell corner offsets; the bottom face runs 0-1-2-3, the top face 4-5-6-7.
inline constexpr std::array<std::array<int, 3>, 8> kCornerOffset = {{
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}};

inline constexpr std::array<std::array<int, 2>, 12> kEdgeCorners = {{
    {0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}}};

// For every corner mask (bit k set = corner k inside) the surface pieces as
// closed loops of cut edges, oriented so that the right-hand normal points
// from the inside corners to the outside ones. Faces with two diagonal
// inside corners keep the inside corners apart.
const std::array<std::vector<std::vector<int>>, 256>& case_loops();

// Iso-surface of the score field sampled at voxel centers. A sample is inside
// when its score exceeds `threshold`. Vertices are interpolated linearly
// along cell edges and shared between neighboring cells. Samples on the grid
// border are not padded, so a solid touching the border leaves an opening.
scene::TriMesh marching_cubes(const voxel::VoxelGrid& scores, double threshold = 0.5);

}  // namespace lfmm::meshgen
