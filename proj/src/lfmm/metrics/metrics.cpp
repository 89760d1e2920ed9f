#include "lfmm/metrics/metrics.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lfmm::metrics {

double jaccard(const voxel::VoxelGrid& a, const voxel::VoxelGrid& b) {
  voxel::require_same_frame(a, b);
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a.scores[i] > 0.5, y = b.scores[i] > 0.5;
    inter += x && y;
    uni += x || y;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

struct SurfaceIndex::Impl {
  struct Node {
    Vec3 lo, hi;
    int left = -1, right = -1;
    int first = 0, count = 0;
  };
  std::vector<std::array<Vec3, 3>> tris;
  std::vector<int> order;
  std::vector<Node> nodes;

  int build(int first, int count) {
    Node node;
    node.lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    node.hi = -node.lo;
    for (int i = first; i < first + count; ++i)
      for (const Vec3& v : tris[order[i]]) {
        node.lo = node.lo.cwiseMin(v);
        node.hi = node.hi.cwiseMax(v);
      }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(node);
    if (count <= 4) {
      nodes[id].first = first;
      nodes[id].count = count;
      return id;
    }
    int axis = 0;
    const Vec3 ext = node.hi - node.lo;
    if (ext[1] > ext[axis]) axis = 1;
    if (ext[2] > ext[axis]) axis = 2;
    const int mid = first + count / 2;
    std::nth_element(order.begin() + first, order.begin() + mid, order.begin() + first + count, [&](int x, int y) {
      const double cx = tris[x][0][axis] + tris[x][1][axis] + tris[x][2][axis];
      const double cy = tris[y][0][axis] + tris[y][1][axis] + tris[y][2][axis];
      return cx < cy || (cx == cy && x < y);
    });
    const int l = build(first, mid - first);
    const int r = build(mid, first + count - mid);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }

  static double box_dist2(const Node& n, const Vec3& p) {
    const Vec3 d = (n.lo - p).cwiseMax(p - n.hi).cwiseMax(Vec3::Zero());
    return d.squaredNorm();
  }

  void query(int id, const Vec3& p, double& best) const {
    const Node& n = nodes[id];
    if (box_dist2(n, p) >= best) return;
    if (n.left < 0) {
      for (int i = n.first; i < n.first + n.count; ++i) {
        const auto& t = tris[order[i]];
        best = std::min(best, (closest_point_on_triangle(p, t[0], t[1], t[2]) - p).squaredNorm());
      }
      return;
    }
    const double dl = box_dist2(nodes[n.left], p), dr = box_dist2(nodes[n.right], p);
    if (dl <= dr) {
      query(n.left, p, best);
      query(n.right, p, best);
    } else {
      query(n.right, p, best);
      query(n.left, p, best);
    }
  }
};

SurfaceIndex::SurfaceIndex(const scene::TriMesh& mesh) : impl_(std::make_unique<Impl>()) {
  if (mesh.triangles.empty()) fail(ErrorCode::EmptyMesh, "mesh has no triangles");
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
    impl_->tris.push_back({mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2)});
  impl_->order.resize(impl_->tris.size());
  std::iota(impl_->order.begin(), impl_->order.end(), 0);
  impl_->build(0, static_cast<int>(impl_->tris.size()));
}

SurfaceIndex::~SurfaceIndex() = default;
SurfaceIndex::SurfaceIndex(SurfaceIndex&&) noexcept = default;
SurfaceIndex& SurfaceIndex::operator=(SurfaceIndex&&) noexcept = default;

double SurfaceIndex::distance(const Vec3& p) const {
  double best = std::numeric_limits<double>::infinity();
  impl_->query(0, p, best);
  return std::sqrt(best);
}

std::vector<Vec3> sample_surface(const scene::TriMesh& mesh, int samples, std::uint64_t seed) {
  if (samples < 1) fail(ErrorCode::InvalidArgument, "sample count must be positive");
  std::vector<double> cdf(mesh.triangles.size());
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    total += mesh.triangle_area(t);
    cdf[t] = total;
  }
  if (!(total > 0.0)) fail(ErrorCode::EmptyMesh, "mesh has no surface area");
  CounterRng rng(seed);
  std::vector<Vec3> out;
  out.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    const double u = rng.uniform() * total;
    std::size_t t = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    t = std::min(t, cdf.size() - 1);
    const double r1 = std::sqrt(rng.uniform()), r2 = rng.uniform();
    out.push_back((1 - r1) * mesh.corner(t, 0) + r1 * (1 - r2) * mesh.corner(t, 1) + r1 * r2 * mesh.corner(t, 2));
  }
  return out;
}

namespace {

double mean_distance(const std::vector<Vec3>& pts, const SurfaceIndex& index) {
  double sum = 0.0;
  for (const Vec3& p : pts) sum += index.distance(p);
  return sum / static_cast<double>(pts.size());
}

}  // namespace

double hausdorff_symmetric(const scene::TriMesh& a, const scene::TriMesh& b, int samples, std::uint64_t seed) {
  if (a.triangles.empty() || b.triangles.empty()) fail(ErrorCode::EmptyMesh, "distance needs two non-empty meshes");
  const SurfaceIndex ia(a), ib(b);
  const double ab = mean_distance(sample_surface(a, samples, seed), ib);
  const double ba = mean_distance(sample_surface(b, samples, seed), ia);
  return 0.5 * (ab + ba) * 1000.0;
}

namespace {

void require_episodes(const std::vector<Episode>& eps) {
  if (eps.empty()) fail(ErrorCode::InvalidArgument, "no episodes");
  for (const Episode& e : eps)
    if (!(e.optimal_length >= 0.0 && e.path_length >= 0.0))
      fail(ErrorCode::InvalidArgument, "episode lengths must be non-negative");
}

double efficiency(const Episode& e) {
  const double denom = std::max(e.path_length, e.optimal_length);
  return denom > 0.0 ? e.optimal_length / denom : 1.0;
}

}  // namespace

double success_rate(const std::vector<Episode>& eps) {
  require_episodes(eps);
  double n = 0.0;
  for (const Episode& e : eps) n += e.success ? 1.0 : 0.0;
  return n / static_cast<double>(eps.size());
}

double spl(const std::vector<Episode>& eps) {
  require_episodes(eps);
  double sum = 0.0;
  for (const Episode& e : eps)
    if (e.success) sum += efficiency(e);
  return sum / static_cast<double>(eps.size());
}

double e2espl(const std::vector<Episode>& eps) {
  require_episodes(eps);
  double sum = 0.0;
  for (const Episode& e : eps) {
    if (!e.pick_success) fail(ErrorCode::InvalidArgument, "episode has no pick outcome");
    if (*e.pick_success) sum += efficiency(e);
  }
  return sum / static_cast<double>(eps.size());
}

double oor(const std::vector<Episode>& eps) {
  require_episodes(eps);
  double sum = 0.0;
  int n = 0;
  for (const Episode& e : eps) {
    if (!e.success) continue;
    ++n;
    sum += e.optimal_length > 0.0 ? std::max(e.path_length, e.optimal_length) / e.optimal_length : 1.0;
  }
  if (n == 0) fail(ErrorCode::NoSuccesses, "OOR needs at least one success");
  return sum / n;
}

}  // namespace lfmm::metrics
