#include "lfmm/core/error.hpp"
#include "lfmm/core/rng.hpp"
#include "lfmm/meshgen/marching_cubes.hpp"
#include "lfmm/meshgen/reconstruct.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

using namespace lfmm;
using namespace lfmm::meshgen;
using voxel::VoxelGrid;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

VoxelGrid grid(int dim, double vs = 0.01) { return VoxelGrid(dim, {Vec3(-0.1, 0.2, 0.05), vs}); }

// Every directed edge appears once and its reverse once: closed, manifold
// along edges, consistently oriented.
bool closed_and_oriented(const scene::TriMesh& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];
  for (const auto& [e, n] : directed) {
    if (n != 1) return false;
    const auto rev = directed.find({e.second, e.first});
    if (rev == directed.end() || rev->second != 1) return false;
  }
  return true;
}

int euler_characteristic(const scene::TriMesh& m) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::set<std::uint32_t> verts;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) {
      verts.insert(t[k]);
      edges.insert(std::minmax(t[k], t[(k + 1) % 3]));
    }
  return static_cast<int>(verts.size()) - static_cast<int>(edges.size()) + static_cast<int>(m.triangles.size());
}

VoxelGrid random_binary(std::uint64_t seed, int dim, double p, bool zero_border) {
  CounterRng rng(seed);
  VoxelGrid g = grid(dim);
  for (int z = 0; z < dim; ++z)
    for (int y = 0; y < dim; ++y)
      for (int x = 0; x < dim; ++x) {
        const bool border = x == 0 || y == 0 || z == 0 || x == dim - 1 || y == dim - 1 || z == dim - 1;
        if (zero_border && border) continue;
        g.at(x, y, z) = rng.uniform() < p ? 1.0 : 0.0;
      }
  return g;
}

}  // namespace

TEST(DensityRatio, Examples) {
  VoxelGrid g = grid(20);
  for (int z = 0; z < 10; ++z)
    for (int y = 0; y < 10; ++y)
      for (int x = 0; x < 10; ++x) g.at(x, y, z) = 1.0;
  EXPECT_EQ(density_ratio(8000, g), 2);
  EXPECT_EQ(density_ratio(1000, g), 1);
  EXPECT_EQ(density_ratio(0, g), 1);
  EXPECT_EQ(density_ratio(27000, g), 3);
  EXPECT_EQ(code_of([] { density_ratio(10, grid(20)); }), ErrorCode::EmptyCompletion);
}

TEST(Upsample, BlocksOfFactorCubed) {
  VoxelGrid g = grid(6);
  g.at(1, 2, 3) = 0.7;
  g.at(5, 5, 5) = 1.0;
  const VoxelGrid u = upsample(g, 3);
  EXPECT_EQ(u.dim, 18);
  EXPECT_EQ(u.frame.origin, g.frame.origin);
  EXPECT_NEAR(u.frame.voxel_size, g.frame.voxel_size / 3, 1e-15);
  EXPECT_EQ(u.occupied_count(), 54u);
  for (int z = 9; z < 12; ++z)
    for (int y = 6; y < 9; ++y)
      for (int x = 3; x < 6; ++x) EXPECT_EQ(u.at(x, y, z), 0.7);
}

TEST(Merge, SurfacePointsAddNothing) {
  VoxelGrid g = random_binary(4, 12, 0.3, false);
  std::vector<Vec3> pts;
  for (const Voxel& v : g.occupied_voxels()) pts.push_back(g.center(v));
  const auto before = g.scores;
  EXPECT_EQ(merge_points(g, pts), 0u);
  EXPECT_EQ(g.scores, before);
  VoxelGrid e = grid(12);
  EXPECT_EQ(merge_points(e, {e.center({3, 4, 5}), e.center({3, 4, 5}), Vec3(5, 5, 5)}), 1u);
}

TEST(FillGaps, MatchesBruteForceClosing) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    VoxelGrid g = random_binary(seed, 10, 0.35, false);
    const VoxelGrid in = g;
    const int d = g.dim;
    auto occ = [&](const VoxelGrid& h, int x, int y, int z, bool outside) {
      if (x < 0 || y < 0 || z < 0 || x >= d || y >= d || z >= d) return outside;
      return h.at(x, y, z) > 0.5;
    };
    const int nb[7][3] = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    VoxelGrid dil = grid(d);
    for (int z = 0; z < d; ++z)
      for (int y = 0; y < d; ++y)
        for (int x = 0; x < d; ++x)
          for (const auto& o : nb)
            if (occ(in, x + o[0], y + o[1], z + o[2], false)) dil.at(x, y, z) = 1.0;
    fill_gaps(g);
    for (int z = 0; z < d; ++z)
      for (int y = 0; y < d; ++y)
        for (int x = 0; x < d; ++x) {
          bool keep = true;
          for (const auto& o : nb) keep = keep && occ(dil, x + o[0], y + o[1], z + o[2], true);
          ASSERT_EQ(g.at(x, y, z) > 0.5, keep) << seed;
          if (in.at(x, y, z) > 0.5) EXPECT_EQ(g.at(x, y, z), in.at(x, y, z));
        }
  }
}

TEST(Smooth, UniformNeighborhoodsKeepClassification) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CounterRng rng(seed + 100);
    VoxelGrid g = grid(10);
    for (double& s : g.scores) s = rng.uniform() < 0.5 ? rng.uniform(0.0, 0.5) : rng.uniform(0.51, 1.0);
    // Add a solid core so some voxels have uniform neighborhoods.
    for (int z = 3; z < 7; ++z)
      for (int y = 3; y < 7; ++y)
        for (int x = 3; x < 7; ++x) g.at(x, y, z) = 0.9;
    const VoxelGrid in = g;
    smooth_scores(g, 10, 0.5);
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_GE(g.scores[i], 0.0);
      EXPECT_LE(g.scores[i], 1.0);
      // No voxel changes side; uniform ones are held exactly.
      EXPECT_EQ(g.scores[i] > 0.5, in.scores[i] > 0.5);
    }
    for (int z = 4; z < 6; ++z)
      for (int y = 4; y < 6; ++y)
        for (int x = 4; x < 6; ++x) EXPECT_EQ(g.at(x, y, z), 0.9);
  }
}

TEST(MarchingCubes, EmptyGrid) { EXPECT_TRUE(marching_cubes(grid(8)).empty()); }

TEST(MarchingCubes, HalfSpaceIsPlanarSheet) {
  const int k = 5;
  VoxelGrid g = grid(12);
  for (int z = 0; z < k; ++z)
    for (int y = 0; y < 12; ++y)
      for (int x = 0; x < 12; ++x) g.at(x, y, z) = 1.0;
  const auto m = marching_cubes(g);
  ASSERT_FALSE(m.empty());
  // Midway between the centers of layers k-1 and k.
  const double want = g.frame.origin.z() + k * g.frame.voxel_size;
  for (const Vec3& v : m.vertices) EXPECT_NEAR(v.z(), want, 1e-12);
  const double side = 11 * g.frame.voxel_size;
  EXPECT_NEAR(m.surface_area(), side * side, 1e-12);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const Vec3 n = (m.corner(t, 1) - m.corner(t, 0)).cross(m.corner(t, 2) - m.corner(t, 0));
    EXPECT_GT(n.z(), 0.0);
  }
}

TEST(MarchingCubes, SphereAreaAndVolume) {
  for (double r : {8.0, 12.0, 16.0}) {
    const int dim = static_cast<int>(2 * r) + 6;
    VoxelGrid g = grid(dim, 0.005);
    const Vec3 c = g.frame.origin + Vec3::Constant(dim * 0.5 * g.frame.voxel_size);
    const double rw = r * g.frame.voxel_size;
    for (int z = 0; z < dim; ++z)
      for (int y = 0; y < dim; ++y)
        for (int x = 0; x < dim; ++x) {
          const double d = (g.center({x, y, z}) - c).norm();
          g.at(x, y, z) = std::clamp(0.5 + 0.25 * (rw - d) / g.frame.voxel_size, 0.0, 1.0);
        }
    const auto m = marching_cubes(g);
    EXPECT_NEAR(m.surface_area() / (4 * kPi * rw * rw), 1.0, 0.10) << r;
    EXPECT_NEAR(m.signed_volume() / (4.0 / 3.0 * kPi * rw * rw * rw), 1.0, 0.05) << r;
    EXPECT_TRUE(closed_and_oriented(m));
    EXPECT_EQ(euler_characteristic(m), 2);
  }
}

TEST(MarchingCubes, RandomFieldsAreClosedAndOriented) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = random_binary(seed, 9, 0.2 + 0.02 * static_cast<double>(seed), true);
    const auto m = marching_cubes(g);
    EXPECT_TRUE(closed_and_oriented(m)) << seed;
    EXPECT_GT(m.signed_volume(), 0.0) << seed;
  }
}

TEST(MarchingCubes, CaseTableComplementsReverse) {
  const auto& loops = case_loops();
  EXPECT_TRUE(loops[0].empty());
  EXPECT_TRUE(loops[255].empty());
  for (int mask = 1; mask < 255; ++mask) {
    // Every cut edge joins an inside and an outside corner and is used once.
    std::multiset<int> used;
    for (const auto& loop : loops[mask])
      for (int e : loop) used.insert(e);
    for (int e = 0; e < 12; ++e) {
      const bool a = mask >> kEdgeCorners[e][0] & 1, b = mask >> kEdgeCorners[e][1] & 1;
      EXPECT_EQ(used.count(e), a != b ? 1u : 0u) << mask << " " << e;
    }
  }
}

TEST(Reconstruct, LoneVoxel) {
  VoxelGrid g = grid(8);
  g.at(4, 4, 4) = 1.0;
  ReconParams p;
  p.smoothing_iters = 0;
  const auto m = reconstruct_mesh(g, {}, p);
  EXPECT_TRUE(closed_and_oriented(m));
  EXPECT_EQ(euler_characteristic(m), 2);
  const double vs3 = std::pow(g.frame.voxel_size, 3);
  EXPECT_NEAR(m.signed_volume() / vs3, 1.0, 0.30);
}

TEST(Reconstruct, SolidBlockIsWatertight) {
  VoxelGrid g = grid(14);
  for (int z = 2; z < 12; ++z)
    for (int y = 2; y < 12; ++y)
      for (int x = 2; x < 12; ++x) g.at(x, y, z) = 1.0;
  const auto m = reconstruct_mesh(g, {});
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> undirected;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) ++undirected[std::minmax(t[k], t[(k + 1) % 3])];
  for (const auto& [e, n] : undirected) EXPECT_EQ(n, 2);
  EXPECT_EQ(euler_characteristic(m), 2);
  // Touching the grid border still closes thanks to the padding.
  VoxelGrid full = grid(6, 0.02);
  std::fill(full.scores.begin(), full.scores.end(), 1.0);
  EXPECT_TRUE(closed_and_oriented(reconstruct_mesh(full, {})));
}

TEST(Reconstruct, ConnectedInputsGiveClosedMeshes) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    CounterRng rng(seed);
    VoxelGrid g = grid(12);
    // random 6-connected walk
    Voxel v{6, 6, 6};
    for (int i = 0; i < 40; ++i) {
      g.at(v) = rng.uniform(0.6, 1.0);
      const int axis = static_cast<int>(rng.uniform_int(0, 2));
      v[axis] = std::clamp(v[axis] + (rng.uniform() < 0.5 ? -1 : 1), 0, 11);
    }
    const auto m = reconstruct_mesh(g, {});
    EXPECT_TRUE(closed_and_oriented(m)) << seed;
    EXPECT_GT(m.signed_volume(), 0.0);
  }
}

TEST(Reconstruct, DeterministicWithObservedPoints) {
  VoxelGrid g = random_binary(7, 10, 0.4, false);
  std::vector<Vec3> pts;
  CounterRng rng(2);
  for (int i = 0; i < 3000; ++i)
    pts.push_back(g.frame.origin + Vec3(rng.uniform(), rng.uniform(), rng.uniform()) * 0.1);
  const auto a = reconstruct_mesh(g, pts);
  const auto b = reconstruct_mesh(g, pts);
  EXPECT_EQ(a.vertices, b.vertices);
  EXPECT_EQ(a.triangles, b.triangles);
  EXPECT_EQ(code_of([] { reconstruct_mesh(grid(5), {}); }), ErrorCode::EmptyCompletion);
  ReconParams bad;
  bad.threshold = 1.0;
  EXPECT_EQ(code_of([&] { reconstruct_mesh(g, {}, bad); }), ErrorCode::InvalidArgument);
}
