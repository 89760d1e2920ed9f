#pragma once

#include "lfmm/scene/camera.hpp"
#include "lfmm/voxel/grid.hpp"

namespace lfmm::voxel {

// Zeroes voxels that camera rays pass through strictly before their first
// observed surface. The grid must be expressed in the view's camera frame
// (as produced by voxelize_view). Voxels containing an observed surface point
// and everything behind the surfaces keep their scores; rays that hit nothing
// carve out to the camera's max_range.
VoxelGrid carve_free_space(const VoxelGrid& scores, const scene::DepthView& view);

}  // namespace lfmm::voxel
