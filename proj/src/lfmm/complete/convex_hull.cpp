#include "lfmm/complete/convex_hull.hpp"

#include "lfmm/core/error.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace lfmm::complete {

namespace {

using Vec = std::array<std::int64_t, 3>;

Vec sub(const LatticePoint& a, const LatticePoint& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::int64_t dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

struct Face {
  std::array<int, 3> v;
  bool alive = true;
  std::vector<int> outside;
};

}  // namespace

std::int64_t orient3d(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                      const LatticePoint& p) {
  return dot(cross(sub(b, a), sub(c, a)), sub(p, a));
}

LatticeHull LatticeHull::build(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 4) fail(ErrorCode::DegenerateHull, "convex hull needs at least 4 distinct points");

  const int n = static_cast<int>(pts.size());
  // Initial simplex from extreme points.
  const int i0 = 0;
  int i1 = -1;
  std::int64_t best = 0;
  for (int i = 0; i < n; ++i) {
    const Vec d = sub(pts[i], pts[i0]);
    if (dot(d, d) > best) { best = dot(d, d); i1 = i; }
  }
  if (i1 < 0) fail(ErrorCode::DegenerateHull, "points coincide");
  int i2 = -1;
  best = 0;
  const Vec e01 = sub(pts[i1], pts[i0]);
  for (int i = 0; i < n; ++i) {
    const Vec c = cross(e01, sub(pts[i], pts[i0]));
    if (dot(c, c) > best) { best = dot(c, c); i2 = i; }
  }
  if (i2 < 0) fail(ErrorCode::DegenerateHull, "points are collinear");
  int i3 = -1;
  best = 0;
  for (int i = 0; i < n; ++i) {
    const std::int64_t o = orient3d(pts[i0], pts[i1], pts[i2], pts[i]);
    if (std::abs(o) > best) { best = std::abs(o); i3 = i; }
  }
  if (i3 < 0) fail(ErrorCode::DegenerateHull, "points are coplanar");

  std::vector<Face> faces;
  std::map<std::pair<int, int>, int> edge_owner;
  auto add_face = [&](int a, int b, int c) {
    const int id = static_cast<int>(faces.size());
    faces.push_back(Face{{a, b, c}, true, {}});
    edge_owner[{a, b}] = id;
    edge_owner[{b, c}] = id;
    edge_owner[{c, a}] = id;
    return id;
  };
  const int simplex[4] = {i0, i1, i2, i3};
  const int tets[4][4] = {{0, 1, 2, 3}, {0, 3, 1, 2}, {1, 3, 2, 0}, {0, 2, 3, 1}};
  for (const auto& t : tets) {
    int a = simplex[t[0]], b = simplex[t[1]], c = simplex[t[2]];
    if (orient3d(pts[a], pts[b], pts[c], pts[simplex[t[3]]]) > 0) std::swap(b, c);
    add_face(a, b, c);
  }

  auto assign = [&](int p, const std::vector<int>& candidates) {
    for (int f : candidates) {
      const auto& fv = faces[f].v;
      if (orient3d(pts[fv[0]], pts[fv[1]], pts[fv[2]], pts[p]) > 0) {
        faces[f].outside.push_back(p);
        return;
      }
    }
  };
  {
    const std::vector<int> initial = {0, 1, 2, 3};
    for (int p = 0; p < n; ++p) {
      if (p == i0 || p == i1 || p == i2 || p == i3) continue;
      assign(p, initial);
    }
  }

  for (std::size_t cursor = 0; cursor < faces.size(); ++cursor) {
    const int fid = static_cast<int>(cursor);
    if (!faces[fid].alive || faces[fid].outside.empty()) continue;

    // Farthest outside point (largest determinant).
    int apex = -1;
    std::int64_t far = 0;
    {
      const auto& fv = faces[fid].v;
      for (int p : faces[fid].outside) {
        const std::int64_t o = orient3d(pts[fv[0]], pts[fv[1]], pts[fv[2]], pts[p]);
        if (o > far) { far = o; apex = p; }
      }
    }

    // Faces visible from the apex form a connected patch around fid.
    std::vector<int> visible = {fid};
    std::vector<char> is_visible(faces.size(), 0);
    is_visible[fid] = 1;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      const auto fv = faces[visible[k]].v;
      for (int e = 0; e < 3; ++e) {
        const int nb = edge_owner.at({fv[(e + 1) % 3], fv[e]});
        if (is_visible[nb]) continue;
        const auto& nv = faces[nb].v;
        if (orient3d(pts[nv[0]], pts[nv[1]], pts[nv[2]], pts[apex]) > 0) {
          is_visible[nb] = 1;
          visible.push_back(nb);
        }
      }
    }

    std::vector<std::pair<int, int>> horizon;
    std::vector<int> orphans;
    for (int f : visible) {
      const auto fv = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const int a = fv[e], b = fv[(e + 1) % 3];
        if (!is_visible[edge_owner.at({b, a})]) horizon.emplace_back(a, b);
      }
      for (int p : faces[f].outside)
        if (p != apex) orphans.push_back(p);
      faces[f].alive = false;
      faces[f].outside.clear();
    }
    for (int f : visible) {
      const auto fv = faces[f].v;
      for (int e = 0; e < 3; ++e) edge_owner.erase({fv[e], fv[(e + 1) % 3]});
    }
    std::vector<int> created;
    for (const auto& [a, b] : horizon) created.push_back(add_face(a, b, apex));
    for (int p : orphans) assign(p, created);
  }

  LatticeHull hull;
  // Compact vertex indices to the points actually used.
  std::vector<int> remap(pts.size(), -1);
  for (const Face& f : faces) {
    if (!f.alive) continue;
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      if (remap[f.v[k]] < 0) {
        remap[f.v[k]] = static_cast<int>(hull.points_.size());
        hull.points_.push_back(pts[f.v[k]]);
      }
      tri[k] = remap[f.v[k]];
    }
    hull.faces_.push_back(tri);
    const Vec normal = cross(sub(pts[f.v[1]], pts[f.v[0]]), sub(pts[f.v[2]], pts[f.v[0]]));
    hull.planes_.push_back({normal, dot(normal, pts[f.v[0]])});
  }
  return hull;
}

bool LatticeHull::contains(const LatticePoint& p) const {
  for (const Plane& pl : planes_)
    if (dot(pl.normal, p) > pl.offset) return false;
  return true;
}

}  // namespace lfmm::complete
