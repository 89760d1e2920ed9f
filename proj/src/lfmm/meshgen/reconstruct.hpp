#pragma once

#include "lfmm/scene/mesh.hpp"
#include "lfmm/voxel/grid.hpp"

#include <vector>

namespace lfmm::meshgen {

struct ReconParams {
  double threshold = 0.5;
  int smoothing_iters = 10;
  double smoothing_lambda = 0.5;
  int hausdorff_samples = 10000;

  void validate() const;
};

// max(1, round(cbrt(observed / occupied))). Throws EmptyCompletion when no
// voxel is above threshold.
int density_ratio(std::size_t observed_points, const voxel::VoxelGrid& completion,
                  double threshold = 0.5);

// Each voxel becomes a factor^3 block; the frame keeps its origin.
voxel::VoxelGrid upsample(const voxel::VoxelGrid& grid, int factor);

// Sets every voxel hit by a point (grid-frame coordinates) to 1. Returns how
// many voxels changed from empty to occupied.
std::size_t merge_points(voxel::VoxelGrid& grid, const std::vector<Vec3>& points,
                         double threshold = 0.5);

// One 6-connected dilation followed by one erosion of the occupied set.
// Outside the grid counts as empty when dilating and as occupied when
// eroding, so the result always contains the input. New voxels get score 1.
std::size_t fill_gaps(voxel::VoxelGrid& grid, double threshold = 0.5);

// Laplacian relaxation of the score field. Voxels whose 6-neighborhood
// shares their classification stay fixed; the others move toward their
// neighbor mean but never cross the threshold.
void smooth_scores(voxel::VoxelGrid& grid, int iterations, double lambda, double threshold = 0.5);

// Upsample, merge observed points, fill gaps, smooth, then extract the
// surface. Before extraction the field is doubled in resolution and padded
// with one empty layer so the surface is closed and sits on voxel faces.
scene::TriMesh reconstruct_mesh(const voxel::VoxelGrid& completion, const std::vector<Vec3>& observed,
                                const ReconParams& params = {});

}  // namespace lfmm::meshgen
