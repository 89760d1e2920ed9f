#include "lfmm/voxel/voxelize.hpp"

#include "lfmm/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace lfmm::voxel {

VoxelizedView voxelize_points(std::vector<Vec3> pts, int dim) {
  if (pts.empty()) fail(ErrorCode::EmptyView, "view has no finite depth samples");
  if (dim < 3) fail(ErrorCode::InvalidArgument, "dim must be at least 3");
  Vec3 lo = pts.front();
  Vec3 hi = pts.front();
  for (const Vec3& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double vs = fixed_voxel_size(dim);
  const double mid_x = 0.5 * (lo.x() + hi.x());
  const double mid_y = 0.5 * (lo.y() + hi.y());
  const int half = dim / 2;

  GridFrame frame;
  frame.voxel_size = vs;
  frame.origin = Vec3(mid_x - half * vs, mid_y - half * vs, lo.z() - vs);

  VoxelizedView out{VoxelGrid(dim, frame), std::move(pts), 0};
  for (const Vec3& p : out.points) {
    // Indices relative to the anchor values keep the anchor point itself
    // exactly on its voxel.
    const int x = static_cast<int>(std::floor((p.x() - mid_x) / vs)) + half;
    const int y = static_cast<int>(std::floor((p.y() - mid_y) / vs)) + half;
    const int z = static_cast<int>(std::floor((p.z() - lo.z()) / vs)) + 1;
    if (out.grid.in_bounds(x, y, z)) {
      out.grid.at(x, y, z) = 1.0;
    } else {
      ++out.dropped;
    }
  }
  return out;
}

VoxelizedView voxelize_view(const scene::DepthView& view, int dim) {
  return voxelize_points(view.camera_points(), dim);
}

std::size_t splat_points(VoxelGrid& grid, const std::vector<Vec3>& points, double value) {
  std::size_t outside = 0;
  for (const Vec3& p : points) {
    if (auto v = grid.locate(p)) {
      grid.at(*v) = value;
    } else {
      ++outside;
    }
  }
  return outside;
}

namespace {

bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

// Orientation of p against the edge (a, b), always evaluated in the same
// canonical endpoint order so both triangles sharing an edge get bitwise
// negated values.
double orient_canon(Vec2 a, Vec2 b, const Vec2& p) {
  const bool flip = lex_less(b, a);
  if (flip) std::swap(a, b);
  const double w = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
  return flip ? -w : w;
}

// Depth along the projection axis of the triangle at p, or nullopt when p is
// not owned by the triangle. Points on an edge belong to the triangle lying
// on the left of the edge's canonical direction, which is a fixed symbolic
// perturbation of p, so shared edges and vertices are counted exactly once.
std::optional<double> column_hit(const Vec2 v[3], const double depth[3], const Vec2& p) {
  double bary[3];
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Vec2& a = v[k];
    const Vec2& b = v[(k + 1) % 3];
    const Vec2& o = v[(k + 2) % 3];
    const double so = orient_canon(a, b, o);
    if (so == 0.0) return std::nullopt;
    const double w = orient_canon(a, b, p);
    if (w == 0.0) {
      // Owner is the triangle whose interior lies left of the canonical
      // direction, whatever the triangle's own winding.
      const double so_canon = lex_less(b, a) ? -so : so;
      if (so_canon < 0.0) return std::nullopt;
    } else if ((w > 0.0) != (so > 0.0)) {
      return std::nullopt;
    }
    bary[(k + 2) % 3] = w / so;
    total += w / so;
  }
  double z = 0.0;
  for (int k = 0; k < 3; ++k) z += bary[k] * depth[k];
  return total > 0.0 ? z / total : depth[0];
}

}  // namespace

MeshVoxelization voxelize_mesh_detailed(const scene::TriMesh& mesh, const GridFrame& frame, int dim) {
  MeshVoxelization out{VoxelGrid(dim, frame), 0};
  std::vector<std::uint8_t> votes(out.grid.size(), 0);
  const double vs = frame.voxel_size;
  const auto d = static_cast<std::size_t>(dim);

  for (int axis = 0; axis < 3; ++axis) {
    const int ab = (axis + 1) % 3;
    const int ac = (axis + 2) % 3;
    std::vector<std::vector<double>> hits(d * d);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
      Vec2 v[3];
      double depth[3];
      double bmin = 1e300, bmax = -1e300, cmin = 1e300, cmax = -1e300;
      for (int k = 0; k < 3; ++k) {
        const Vec3& p = mesh.corner(t, k);
        v[k] = Vec2(p[ab], p[ac]);
        depth[k] = p[axis];
        bmin = std::min(bmin, p[ab]);
        bmax = std::max(bmax, p[ab]);
        cmin = std::min(cmin, p[ac]);
        cmax = std::max(cmax, p[ac]);
      }
      const int j0 = std::max(0, static_cast<int>(std::ceil((bmin - frame.origin[ab]) / vs - 0.5)));
      const int j1 = std::min(dim - 1, static_cast<int>(std::floor((bmax - frame.origin[ab]) / vs - 0.5)));
      const int k0 = std::max(0, static_cast<int>(std::ceil((cmin - frame.origin[ac]) / vs - 0.5)));
      const int k1 = std::min(dim - 1, static_cast<int>(std::floor((cmax - frame.origin[ac]) / vs - 0.5)));
      for (int k = k0; k <= k1; ++k) {
        for (int j = j0; j <= j1; ++j) {
          const Vec2 p(frame.origin[ab] + (j + 0.5) * vs, frame.origin[ac] + (k + 0.5) * vs);
          if (auto z = column_hit(v, depth, p)) hits[static_cast<std::size_t>(k) * d + j].push_back(*z);
        }
      }
    }
    for (int k = 0; k < dim; ++k) {
      for (int j = 0; j < dim; ++j) {
        auto& col = hits[static_cast<std::size_t>(k) * d + j];
        if (col.empty()) continue;
        std::sort(col.begin(), col.end());
        std::size_t passed = 0;
        for (int i = 0; i < dim; ++i) {
          const double c = frame.origin[axis] + (i + 0.5) * vs;
          while (passed < col.size() && col[passed] < c) ++passed;
          if (passed % 2 == 1) {
            Voxel vox;
            vox[axis] = i;
            vox[ab] = j;
            vox[ac] = k;
            ++votes[out.grid.index(vox)];
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < votes.size(); ++i) {
    if (votes[i] >= 2) out.grid.scores[i] = 1.0;
    if (votes[i] == 1 || votes[i] == 2) ++out.parity_conflicts;
  }
  return out;
}

VoxelGrid voxelize_mesh(const scene::TriMesh& mesh, const GridFrame& frame, int dim) {
  return voxelize_mesh_detailed(mesh, frame, dim).grid;
}

}  // namespace lfmm::voxel
