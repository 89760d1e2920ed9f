#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace lfmm::complete {

using LatticePoint = std::array<std::int64_t, 3>;

// 3D convex hull of integer points by quickhull. All predicates are exact
// integer determinants, so coplanar and collinear subsets need no joggling;
// points lying on a face are simply not outside it.
class LatticeHull {
 public:
  // Throws DegenerateHull if the points do not span a 3D volume.
  static LatticeHull build(std::vector<LatticePoint> points);

  // Faces as outward-oriented (counter-clockwise seen from outside) index
  // triples into points().
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  const std::vector<LatticePoint>& points() const { return points_; }

  // Closed containment (boundary counts as inside).
  bool contains(const LatticePoint& p) const;

  struct Plane {
    std::array<std::int64_t, 3> normal;  // outward
    std::int64_t offset;                 // normal . p <= offset inside
  };
  const std::vector<Plane>& planes() const { return planes_; }

 private:
  std::vector<LatticePoint> points_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<Plane> planes_;
};

// det[b - a, c - a, p - a]: positive when p is on the side the normal
// (b - a) x (c - a) points to.
std::int64_t orient3d(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c,
                      const LatticePoint& p);

}  // namespace lfmm::complete
