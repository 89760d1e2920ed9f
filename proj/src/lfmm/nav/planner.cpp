#include "lfmm/nav/planner.hpp"

#include "lfmm/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

namespace lfmm::nav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Squared-distance transform of one line (Felzenszwalb and Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
  const int n = static_cast<int>(f.size());
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    double s;
    while (true) {
      s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * (q - v[k]));
      if (s <= z[k] && k > 0) {
        --k;
      } else {
        break;
      }
    }
    if (s <= z[k]) {
      // k == 0 and the new parabola dominates everywhere.
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), kInf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    d[q] = (q - v[j]) * double(q - v[j]) + f[v[j]];
  }
}

}  // namespace

std::vector<double> obstacle_distance(const OccupancyMap2D& map) {
  const int w = map.width, h = map.height;
  std::vector<double> g(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = map.blocked[i] ? 0.0 : kInf;
  std::vector<double> f, d;
  f.resize(h);
  d.resize(h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = g[map.index(x, y)];
    edt_1d(f, d);
    for (int y = 0; y < h; ++y) g[map.index(x, y)] = d[y];
  }
  f.resize(w);
  d.resize(w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f[x] = g[map.index(x, y)];
    edt_1d(f, d);
    for (int x = 0; x < w; ++x) g[map.index(x, y)] = d[x];
  }
  for (double& v : g) v = std::sqrt(v) * map.cell_size;
  return g;
}

std::vector<double> inflation_penalty(const OccupancyMap2D& map, const CostParams& p) {
  if (!(p.inflation_radius >= 0 && p.inflation_weight >= 0 && p.inflation_decay > 0))
    fail(ErrorCode::InvalidArgument, "invalid inflation parameters");
  std::vector<double> dist = obstacle_distance(map);
  for (double& d : dist) d = d < p.inflation_radius ? p.inflation_weight * std::exp(-d / p.inflation_decay) : 0.0;
  return dist;
}

double step_cost(const OccupancyMap2D& map, const std::vector<double>& penalty, const Cell& a, const Cell& b) {
  const int dx = b.x - a.x, dy = b.y - a.y;
  if (std::abs(dx) > 1 || std::abs(dy) > 1 || (dx == 0 && dy == 0)) return kInf;
  if (!map.is_free(a) || !map.is_free(b)) return kInf;
  if (dx != 0 && dy != 0 && (!map.is_free({a.x + dx, a.y}) || !map.is_free({a.x, a.y + dy}))) return kInf;
  const double len = (dx != 0 && dy != 0 ? std::sqrt(2.0) : 1.0) * map.cell_size;
  return len * (1.0 + penalty[map.index(b.x, b.y)]);
}

PlannedPath plan_path(const OccupancyMap2D& map, const Vec2& start, const Vec2& goal, const CostParams& params) {
  map.validate();
  const auto s = map.cell_of(start);
  const auto g = map.cell_of(goal);
  if (!s || !g) fail(ErrorCode::NoPath, "start or goal lies off the map");
  if (!map.is_free(*s) || !map.is_free(*g)) fail(ErrorCode::NoPath, "start or goal cell is blocked");

  const std::vector<double> penalty = inflation_penalty(map, params);
  const std::size_t n = map.blocked.size();
  std::vector<double> dist(n, kInf);
  std::vector<std::int64_t> parent(n, -1);
  std::vector<char> done(n, 0);
  using Item = std::tuple<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  const std::size_t si = map.index(s->x, s->y), gi = map.index(g->x, g->y);
  dist[si] = 0.0;
  open.emplace(0.0, si);
  while (!open.empty()) {
    const auto [d, i] = open.top();
    open.pop();
    if (done[i]) continue;
    done[i] = 1;
    if (i == gi) break;
    const Cell c{static_cast<int>(i % map.width), static_cast<int>(i / map.width)};
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell nb{c.x + dx, c.y + dy};
        const double w = step_cost(map, penalty, c, nb);
        if (w == kInf) continue;
        const std::size_t j = map.index(nb.x, nb.y);
        const double nd = d + w;
        if (nd < dist[j]) {
          dist[j] = nd;
          parent[j] = static_cast<std::int64_t>(i);
          open.emplace(nd, j);
        }
      }
  }
  if (dist[gi] == kInf) fail(ErrorCode::NoPath, "goal is unreachable");

  PlannedPath path;
  path.cost = dist[gi];
  for (std::int64_t i = static_cast<std::int64_t>(gi); i >= 0; i = parent[i])
    path.cells.push_back({static_cast<int>(i % map.width), static_cast<int>(i / map.width)});
  std::reverse(path.cells.begin(), path.cells.end());
  for (std::size_t k = 0; k < path.cells.size(); ++k) {
    const Vec2 p = map.cell_center(path.cells[k]);
    path.waypoints.push_back({p.x(), p.y(), 0.0});
    if (k > 0) path.length += (p - map.cell_center(path.cells[k - 1])).norm();
  }
  for (std::size_t k = 0; k < path.waypoints.size(); ++k) {
    if (k + 1 < path.waypoints.size()) {
      path.waypoints[k].yaw = std::atan2(path.waypoints[k + 1].y - path.waypoints[k].y,
                                         path.waypoints[k + 1].x - path.waypoints[k].x);
    } else if (k > 0) {
      path.waypoints[k].yaw = path.waypoints[k - 1].yaw;
    }
  }
  return path;
}

}  // namespace lfmm::nav
