#pragma once

#include "lfmm/voxel/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lfmm::voxel {

// Visits the voxels of a dim^3 grid pierced by the ray origin + t * dir for
// t in [0, t_max], in order (Amanatides-Woo). `visit(voxel, t_enter, t_exit)`
// returns false to stop early. `dir` need not be normalized; t is in units of
// |dir|.
template <typename Visit>
void traverse_ray(const GridFrame& frame, int dim, const Vec3& origin, const Vec3& dir, double t_max,
                  Visit&& visit) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const Vec3 o = (origin - frame.origin) / frame.voxel_size;
  const Vec3 d = dir / frame.voxel_size;

  double t0 = 0.0;
  double t1 = t_max;
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) {
      if (o[a] < 0.0 || o[a] >= dim) return;
      continue;
    }
    double ta = (0.0 - o[a]) / d[a];
    double tb = (dim - o[a]) / d[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  if (!(t0 < t1)) return;

  const double t_mid = t0 + 1e-9 * (t1 - t0);
  Voxel v;
  int step[3];
  double t_next[3];
  double t_delta[3];
  for (int a = 0; a < 3; ++a) {
    const double p = o[a] + t_mid * d[a];
    v[a] = std::clamp(static_cast<int>(std::floor(p)), 0, dim - 1);
    if (d[a] > 0.0) {
      step[a] = 1;
      t_delta[a] = 1.0 / d[a];
      t_next[a] = (v[a] + 1 - o[a]) / d[a];
    } else if (d[a] < 0.0) {
      step[a] = -1;
      t_delta[a] = -1.0 / d[a];
      t_next[a] = (v[a] - o[a]) / d[a];
    } else {
      step[a] = 0;
      t_delta[a] = inf;
      t_next[a] = inf;
    }
  }

  double t = t0;
  while (t < t1) {
    int axis = 0;
    if (t_next[1] < t_next[axis]) axis = 1;
    if (t_next[2] < t_next[axis]) axis = 2;
    const double t_exit = std::min(t_next[axis], t1);
    if (!visit(static_cast<const Voxel&>(v), t, t_exit)) return;
    t = t_exit;
    v[axis] += step[axis];
    t_next[axis] += t_delta[axis];
    if (v[axis] < 0 || v[axis] >= dim) return;
  }
}

}  // namespace lfmm::voxel
