#include "lfmm/scene/tactile.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lfmm::scene {

std::optional<Voxel> first_contact(const voxel::VoxelGrid& gt, int x, int y) {
  if (x < 0 || y < 0 || x >= gt.dim || y >= gt.dim) return std::nullopt;
  for (int z = gt.dim - 1; z >= 0; --z) {
    if (gt.at(x, y, z) > 0.5) return Voxel{x, y, z};
  }
  return std::nullopt;
}

TactileSet probe_columns(const voxel::VoxelGrid& gt, const std::vector<std::pair<int, int>>& columns) {
  TactileSet set;
  for (const auto& [x, y] : columns) {
    const auto hit = first_contact(gt, x, y);
    if (hit && std::find(set.contacts.begin(), set.contacts.end(), *hit) == set.contacts.end()) {
      set.contacts.push_back(*hit);
    }
  }
  return set;
}

TactileSet sample_tactile(const voxel::VoxelGrid& gt, int npts, std::uint64_t seed) {
  if (npts < 0) fail(ErrorCode::InvalidArgument, "npts must be non-negative");
  CounterRng rng(seed);
  std::vector<int> xs(static_cast<std::size_t>(npts));
  std::vector<int> ys(static_cast<std::size_t>(npts));
  for (auto& x : xs) x = static_cast<int>(rng.uniform_int(0, gt.dim - 1));
  for (auto& y : ys) y = static_cast<int>(rng.uniform_int(0, gt.dim - 1));
  std::vector<std::pair<int, int>> columns;
  for (int i = 0; i < npts; ++i) columns.emplace_back(xs[i], ys[i]);
  return probe_columns(gt, columns);
}

HalfShapeKind parse_half_shape_kind(const std::string& name) {
  if (name == "sphere") return HalfShapeKind::Sphere;
  if (name == "cube") return HalfShapeKind::Cube;
  if (name == "diamond") return HalfShapeKind::Diamond;
  fail(ErrorCode::InvalidArgument, "unknown half-shape '" + name + "'");
}

const char* to_string(HalfShapeKind kind) {
  switch (kind) {
    case HalfShapeKind::Sphere: return "sphere";
    case HalfShapeKind::Cube: return "cube";
    case HalfShapeKind::Diamond: return "diamond";
  }
  return "?";
}

namespace {

bool inside(HalfShapeKind kind, const Vec3& d, double r) {
  switch (kind) {
    case HalfShapeKind::Sphere: return d.norm() <= r;
    case HalfShapeKind::Cube: return d.cwiseAbs().maxCoeff() <= r;
    case HalfShapeKind::Diamond: return d.cwiseAbs().sum() <= r;
  }
  return false;
}

}  // namespace

HalfShape make_half_shape_at(HalfShapeKind front, HalfShapeKind back, int size, int shift_x,
                             int shift_y) {
  constexpr int dim = voxel::kDefaultDim;
  if (size < 2 || size > dim - 8) fail(ErrorCode::InvalidArgument, "half-shape size must be in [2, 32]");
  if (std::abs(shift_x) > 3 || std::abs(shift_y) > 3) {
    fail(ErrorCode::InvalidArgument, "half-shape shift must be within 3 voxels");
  }
  HalfShape out{voxel::VoxelGrid(dim, voxel::GridFrame{}), {}};
  const Vec3 c(0.5 * dim + shift_x, 0.5 * dim + shift_y, 0.5 * dim);
  const double r = 0.5 * size;
  for (int z = 0; z < dim; ++z) {
    for (int y = 0; y < dim; ++y) {
      for (int x = 0; x < dim; ++x) {
        const Vec3 d = Vec3(x + 0.5, y + 0.5, z + 0.5) - c;
        const HalfShapeKind kind = d.z() < 0.0 ? front : back;
        if (inside(kind, d, r)) out.grid.at(x, y, z) = 1.0;
      }
    }
  }
  for (std::size_t i = 0; i < kHalfShapeRays.size(); ++i) {
    out.ray_contacts[i] = first_contact(out.grid, kHalfShapeRays[i][0], kHalfShapeRays[i][1]);
  }
  return out;
}

HalfShape make_half_shape(HalfShapeKind front, HalfShapeKind back, int size, std::uint64_t seed) {
  CounterRng rng(seed);
  const int sx = static_cast<int>(rng.uniform_int(-3, 3));
  const int sy = static_cast<int>(rng.uniform_int(-3, 3));
  return make_half_shape_at(front, back, size, sx, sy);
}

}  // namespace lfmm::scene
