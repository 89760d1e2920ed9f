#include "lfmm/meshgen/marching_cubes.hpp"

#include <algorithm>
#include <unordered_map>

namespace lfmm::meshgen {

namespace {

// Cell faces with their corners counter-clockwise seen from outside.
constexpr int kFaces[6][4] = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                              {3, 7, 6, 2}, {0, 4, 7, 3}, {1, 2, 6, 5}};

int edge_between(int a, int b) {
  for (int e = 0; e < 12; ++e) {
    const auto& c = kEdgeCorners[e];
    if ((c[0] == a && c[1] == b) || (c[0] == b && c[1] == a)) return e;
  }
  return -1;
}

Vec3 edge_midpoint(int e) {
  const auto& a = kCornerOffset[kEdgeCorners[e][0]];
  const auto& b = kCornerOffset[kEdgeCorners[e][1]];
  return Vec3(a[0] + b[0], a[1] + b[1], a[2] + b[2]) * 0.5;
}

std::vector<std::vector<int>> loops_for(int mask, bool flip) {
  auto inside = [mask](int c) { return (mask >> c & 1) != 0; };
  int next[12];
  std::fill(std::begin(next), std::end(next), -1);
  for (const auto& face : kFaces) {
    const int n_in = inside(face[0]) + inside(face[1]) + inside(face[2]) + inside(face[3]);
    if (n_in == 0 || n_in == 4) continue;
    // Each maximal run of inside corners, walking counter-clockwise, is
    // entered through one edge and left through another. Diagonal pairs
    // count as two runs, which separates them.
    for (int k = 0; k < 4; ++k) {
      const int prev = face[(k + 3) % 4];
      const int cur = face[k];
      if (!inside(cur) || inside(prev)) continue;
      const int entry = edge_between(prev, cur);
      int j = k;
      while (inside(face[(j + 1) % 4])) j = (j + 1) % 4;
      const int exit = edge_between(face[j], face[(j + 1) % 4]);
      next[exit] = entry;
    }
  }
  std::vector<std::vector<int>> loops;
  bool used[12] = {};
  for (int start = 0; start < 12; ++start) {
    if (next[start] < 0 || used[start]) continue;
    std::vector<int> loop;
    for (int e = start; !used[e]; e = next[e]) {
      used[e] = true;
      loop.push_back(e);
    }
    if (flip) std::reverse(loop.begin(), loop.end());
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::array<std::vector<std::vector<int>>, 256> build_table() {
  // Decide the global orientation from the single-corner case: its normal
  // must point away from corner 0.
  const auto probe = loops_for(1, false);
  const auto& l = probe.front();
  const Vec3 a = edge_midpoint(l[0]), b = edge_midpoint(l[1]), c = edge_midpoint(l[2]);
  const bool flip = (b - a).cross(c - a).dot(Vec3(1, 1, 1)) < 0.0;
  std::array<std::vector<std::vector<int>>, 256> table;
  for (int mask = 0; mask < 256; ++mask) table[mask] = loops_for(mask, flip);
  return table;
}

bool share_face(int e0, int e1) {
  for (const auto& face : kFaces) {
    bool has0 = false, has1 = false;
    for (int k = 0; k < 4; ++k) {
      const int e = edge_between(face[k], face[(k + 1) % 4]);
      has0 |= e == e0;
      has1 |= e == e1;
    }
    if (has0 && has1) return true;
  }
  return false;
}

}  // namespace

const std::array<std::vector<std::vector<int>>, 256>& case_loops() {
  static const auto table = build_table();
  return table;
}

scene::TriMesh marching_cubes(const voxel::VoxelGrid& g, double threshold) {
  scene::TriMesh mesh;
  const int dim = g.dim;
  if (dim < 2) return mesh;
  const auto& table = case_loops();
  static const auto same_face = [] {
    std::array<std::array<bool, 12>, 12> m{};
    for (int a = 0; a < 12; ++a)
      for (int b = 0; b < 12; ++b) m[a][b] = share_face(a, b);
    return m;
  }();

  std::unordered_map<std::uint64_t, std::uint32_t> edge_vertex;
  const double vs = g.frame.voxel_size;
  auto sample_pos = [&](int x, int y, int z) {
    return Vec3(g.frame.origin + Vec3(x + 0.5, y + 0.5, z + 0.5) * vs);
  };

  for (int z = 0; z + 1 < dim; ++z) {
    for (int y = 0; y + 1 < dim; ++y) {
      for (int x = 0; x + 1 < dim; ++x) {
        double val[8];
        int mask = 0;
        for (int c = 0; c < 8; ++c) {
          const auto& o = kCornerOffset[c];
          val[c] = g.at(x + o[0], y + o[1], z + o[2]);
          if (val[c] > threshold) mask |= 1 << c;
        }
        if (mask == 0 || mask == 255) continue;

        std::uint32_t vid[12];
        auto vertex_for = [&](int e) {
          const int ca = kEdgeCorners[e][0], cb = kEdgeCorners[e][1];
          const auto& oa = kCornerOffset[ca];
          const auto& ob = kCornerOffset[cb];
          const int lo[3] = {x + std::min(oa[0], ob[0]), y + std::min(oa[1], ob[1]), z + std::min(oa[2], ob[2])};
          const int axis = oa[0] != ob[0] ? 0 : (oa[1] != ob[1] ? 1 : 2);
          const std::uint64_t key = static_cast<std::uint64_t>(g.index(lo[0], lo[1], lo[2])) * 3 + axis;
          auto [it, inserted] = edge_vertex.try_emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
          if (inserted) {
            const double t = std::clamp((threshold - val[ca]) / (val[cb] - val[ca]), 0.0, 1.0);
            const Vec3 pa = sample_pos(x + oa[0], y + oa[1], z + oa[2]);
            const Vec3 pb = sample_pos(x + ob[0], y + ob[1], z + ob[2]);
            mesh.vertices.push_back(pa + t * (pb - pa));
          }
          return it->second;
        };

        for (const auto& loop : table[mask]) {
          for (int e : loop) vid[e] = vertex_for(e);
          const std::size_t n = loop.size();
          bool fan_ok = true;
          for (std::size_t i = 2; i + 1 < n; ++i) fan_ok &= !same_face[loop[0]][loop[i]];
          if (fan_ok) {
            for (std::size_t i = 1; i + 1 < n; ++i)
              mesh.triangles.push_back({vid[loop[0]], vid[loop[i]], vid[loop[i + 1]]});
          } else {
            // A fan diagonal would lie in a cell face and could collide with
            // the neighbor's triangulation; use a private center vertex.
            Vec3 center = Vec3::Zero();
            for (int e : loop) center += mesh.vertices[vid[e]];
            const auto cid = static_cast<std::uint32_t>(mesh.vertices.size());
            mesh.vertices.push_back(center / static_cast<double>(n));
            for (std::size_t i = 0; i < n; ++i)
              mesh.triangles.push_back({cid, vid[loop[i]], vid[loop[(i + 1) % n]]});
          }
        }
      }
    }
  }
  return mesh;
}

}  // namespace lfmm::meshgen
