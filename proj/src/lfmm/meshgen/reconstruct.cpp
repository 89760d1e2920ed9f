#include "lfmm/meshgen/reconstruct.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/meshgen/marching_cubes.hpp"

#include <algorithm>
#include <cmath>

namespace lfmm::meshgen {

using voxel::VoxelGrid;

namespace {

constexpr int kNeighbors[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};

}  // namespace

void ReconParams::validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) fail(ErrorCode::InvalidArgument, "threshold must lie in (0, 1)");
  if (smoothing_iters < 0) fail(ErrorCode::InvalidArgument, "smoothing_iters must be non-negative");
  if (!(smoothing_lambda >= 0.0 && smoothing_lambda <= 1.0))
    fail(ErrorCode::InvalidArgument, "smoothing_lambda must lie in [0, 1]");
  if (hausdorff_samples < 1) fail(ErrorCode::InvalidArgument, "hausdorff_samples must be positive");
}

int density_ratio(std::size_t observed, const VoxelGrid& completion, double threshold) {
  const std::size_t occupied = completion.occupied_count(threshold);
  if (occupied == 0) fail(ErrorCode::EmptyCompletion, "completion has no occupied voxels");
  const double r = std::round(std::cbrt(static_cast<double>(observed) / static_cast<double>(occupied)));
  return std::max(1, static_cast<int>(r));
}

VoxelGrid upsample(const VoxelGrid& g, int factor) {
  if (factor < 1) fail(ErrorCode::InvalidArgument, "upsample factor must be >= 1");
  if (factor == 1) return g;
  voxel::GridFrame frame{g.frame.origin, g.frame.voxel_size / factor};
  VoxelGrid out(g.dim * factor, frame, 0.0);
  for (int z = 0; z < out.dim; ++z)
    for (int y = 0; y < out.dim; ++y)
      for (int x = 0; x < out.dim; ++x) out.at(x, y, z) = g.at(x / factor, y / factor, z / factor);
  return out;
}

std::size_t merge_points(VoxelGrid& g, const std::vector<Vec3>& points, double threshold) {
  std::size_t added = 0;
  for (const Vec3& p : points) {
    const auto v = g.locate(p);
    if (!v) continue;
    if (!(g.at(*v) > threshold)) ++added;
    g.at(*v) = 1.0;
  }
  return added;
}

std::size_t fill_gaps(VoxelGrid& g, double threshold) {
  const int dim = g.dim;
  std::vector<char> occ(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) occ[i] = g.scores[i] > threshold;

  std::vector<char> dil(occ);
  for (int z = 0; z < dim; ++z)
    for (int y = 0; y < dim; ++y)
      for (int x = 0; x < dim; ++x) {
        if (occ[g.index(x, y, z)]) continue;
        for (const auto& d : kNeighbors) {
          const int a = x + d[0], b = y + d[1], c = z + d[2];
          if (g.in_bounds(a, b, c) && occ[g.index(a, b, c)]) {
            dil[g.index(x, y, z)] = 1;
            break;
          }
        }
      }

  std::size_t added = 0;
  for (int z = 0; z < dim; ++z)
    for (int y = 0; y < dim; ++y)
      for (int x = 0; x < dim; ++x) {
        const std::size_t i = g.index(x, y, z);
        if (!dil[i] || occ[i]) continue;
        bool keep = true;
        for (const auto& d : kNeighbors) {
          const int a = x + d[0], b = y + d[1], c = z + d[2];
          if (g.in_bounds(a, b, c) && !dil[g.index(a, b, c)]) {
            keep = false;
            break;
          }
        }
        if (keep) {
          g.scores[i] = 1.0;
          ++added;
        }
      }
  return added;
}

void smooth_scores(VoxelGrid& g, int iterations, double lambda, double threshold) {
  const int dim = g.dim;
  const std::size_t n = g.size();
  std::vector<char> occ(n), fixed(n);
  for (std::size_t i = 0; i < n; ++i) occ[i] = g.scores[i] > threshold;
  for (int z = 0; z < dim; ++z)
    for (int y = 0; y < dim; ++y)
      for (int x = 0; x < dim; ++x) {
        const std::size_t i = g.index(x, y, z);
        bool uniform = true;
        for (const auto& d : kNeighbors) {
          const int a = x + d[0], b = y + d[1], c = z + d[2];
          const bool o = g.in_bounds(a, b, c) ? occ[g.index(a, b, c)] != 0 : false;
          if (o != (occ[i] != 0)) {
            uniform = false;
            break;
          }
        }
        fixed[i] = uniform;
      }
  const double hi_lo = std::min(1.0, threshold + 0.01);
  const double lo_hi = std::max(0.0, threshold - 0.01);
  std::vector<double> next(g.scores);
  for (int it = 0; it < iterations; ++it) {
    for (int z = 0; z < dim; ++z)
      for (int y = 0; y < dim; ++y)
        for (int x = 0; x < dim; ++x) {
          const std::size_t i = g.index(x, y, z);
          if (fixed[i]) continue;
          double sum = 0.0;
          for (const auto& d : kNeighbors) {
            const int a = x + d[0], b = y + d[1], c = z + d[2];
            sum += g.in_bounds(a, b, c) ? g.scores[g.index(a, b, c)] : 0.0;
          }
          const double s = (1.0 - lambda) * g.scores[i] + lambda * sum / 6.0;
          next[i] = occ[i] ? std::clamp(s, hi_lo, 1.0) : std::clamp(s, 0.0, lo_hi);
        }
    g.scores.swap(next);
    next = g.scores;
  }
}

scene::TriMesh reconstruct_mesh(const VoxelGrid& completion, const std::vector<Vec3>& observed,
                                const ReconParams& params) {
  params.validate();
  const int ratio = density_ratio(observed.size(), completion, params.threshold);
  VoxelGrid g = upsample(completion, ratio);
  merge_points(g, observed, params.threshold);
  fill_gaps(g, params.threshold);
  smooth_scores(g, params.smoothing_iters, params.smoothing_lambda, params.threshold);

  // Double the sampling so a lone voxel yields a rounded cube rather than a
  // small octahedron, then pad so nothing touches the border.
  const VoxelGrid fine = upsample(g, 2);
  voxel::GridFrame padded_frame{fine.frame.origin - Vec3::Constant(fine.frame.voxel_size),
                                fine.frame.voxel_size};
  VoxelGrid padded(fine.dim + 2, padded_frame, 0.0);
  for (int z = 0; z < fine.dim; ++z)
    for (int y = 0; y < fine.dim; ++y)
      for (int x = 0; x < fine.dim; ++x) padded.at(x + 1, y + 1, z + 1) = fine.at(x, y, z);
  return marching_cubes(padded, params.threshold);
}

}  // namespace lfmm::meshgen
