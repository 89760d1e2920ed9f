#pragma once

#include "lfmm/scene/camera.hpp"
#include "lfmm/scene/mesh.hpp"
#include "lfmm/voxel/grid.hpp"

#include <vector>

namespace lfmm::voxel {

struct VoxelizedView {
  VoxelGrid grid;              // binary, in the camera frame of the view
  std::vector<Vec3> points;    // back-projected points, camera frame
  std::size_t dropped = 0;     // points that fell outside the grid window
};

// Fixed-scale voxelization of a depth view. The window is centered on the
// midpoint of the cloud's x and y extents and starts one voxel in front of
// the nearest point in z; voxel size is 0.3 / (dim - 2).
// Throws EmptyView if the view has no finite depth.
VoxelizedView voxelize_view(const scene::DepthView& view, int dim = kDefaultDim);

// Same window computation applied to an explicit camera-frame point cloud.
VoxelizedView voxelize_points(std::vector<Vec3> camera_points, int dim = kDefaultDim);

// Sets every voxel containing one of `points` (given in the grid's frame
// coordinates) to `value`; returns how many points fell outside.
std::size_t splat_points(VoxelGrid& grid, const std::vector<Vec3>& points, double value = 1.0);

struct MeshVoxelization {
  VoxelGrid grid;
  // Voxels where the three axis-parity votes were not unanimous.
  std::size_t parity_conflicts = 0;
};

// Solid voxelization of `mesh` (coordinates already in the frame's space):
// a voxel is filled when its center is inside by ray-parity along at least two
// of the three axes.
MeshVoxelization voxelize_mesh_detailed(const scene::TriMesh& mesh, const GridFrame& frame,
                                        int dim = kDefaultDim);
VoxelGrid voxelize_mesh(const scene::TriMesh& mesh, const GridFrame& frame, int dim = kDefaultDim);

}  // namespace lfmm::voxel
