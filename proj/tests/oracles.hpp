#pragma once

#include "lfmm/nav/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

// Reference implementations shared by unit tests and the acceptance runner.
namespace lfmm::test {

// Cyclic Jacobi on a symmetric 3x3; returns the eigenvector of the smallest
// eigenvalue and the sorted eigenvalues.
inline std::pair<std::array<double, 3>, std::array<double, 3>> jacobi_min(std::array<std::array<double, 3>, 3> a) {
  std::array<std::array<double, 3>, 3> v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if (off < 1e-30) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  int m = 0;
  for (int k = 1; k < 3; ++k)
    if (a[k][k] < a[m][m]) m = k;
  std::array<double, 3> ev{a[0][0], a[1][1], a[2][2]};
  std::sort(ev.begin(), ev.end());
  return {{v[0][m], v[1][m], v[2][m]}, ev};
}

// Bellman-Ford over every allowed 8-neighbor edge.
inline std::vector<double> bellman_ford(const nav::OccupancyMap2D& m, const std::vector<double>& pen, const nav::Cell& s) {
  std::vector<double> d(m.blocked.size(), std::numeric_limits<double>::infinity());
  d[m.index(s.x, s.y)] = 0.0;
  for (std::size_t iter = 0; iter < d.size(); ++iter) {
    bool changed = false;
    for (int y = 0; y < m.height; ++y)
      for (int x = 0; x < m.width; ++x) {
        const double dx = d[m.index(x, y)];
        if (dx == std::numeric_limits<double>::infinity()) continue;
        for (int oy = -1; oy <= 1; ++oy)
          for (int ox = -1; ox <= 1; ++ox) {
            if (!ox && !oy) continue;
            const nav::Cell b{x + ox, y + oy};
            const double c = nav::step_cost(m, pen, {x, y}, b);
            if (c == std::numeric_limits<double>::infinity()) continue;
            double& db = d[m.index(b.x, b.y)];
            if (dx + c < db - 1e-12) {
              db = dx + c;
              changed = true;
            }
          }
      }
    if (!changed) break;
  }
  return d;
}

}  // namespace lfmm::test
