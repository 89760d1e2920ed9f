#include "lfmm/scene/primitives.hpp"

#include "lfmm/core/error.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace lfmm::scene {

namespace {

std::uint32_t add(TriMesh& m, const Vec3& v) {
  m.vertices.push_back(v);
  return static_cast<std::uint32_t>(m.vertices.size() - 1);
}

}  // namespace

TriMesh make_box(const Vec3& size) {
  const Vec3 h = 0.5 * size;
  TriMesh m;
  for (int i = 0; i < 8; ++i) {
    m.vertices.emplace_back((i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(),
                            (i & 4) ? h.z() : -h.z());
  }
  // Two triangles per face, counter-clockwise seen from outside.
  m.triangles = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6}, {0, 1, 5}, {0, 5, 4},
                 {2, 6, 7}, {2, 7, 3}, {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
  return m;
}

TriMesh make_ellipsoid(const Vec3& radii, int slices, int stacks) {
  TriMesh m;
  const auto top = add(m, Vec3(0, 0, radii.z()));
  std::vector<std::uint32_t> ring_start;
  for (int s = 1; s < stacks; ++s) {
    const double phi = kPi * s / stacks;
    ring_start.push_back(static_cast<std::uint32_t>(m.vertices.size()));
    for (int k = 0; k < slices; ++k) {
      const double th = 2.0 * kPi * k / slices;
      add(m, Vec3(radii.x() * std::sin(phi) * std::cos(th), radii.y() * std::sin(phi) * std::sin(th),
                  radii.z() * std::cos(phi)));
    }
  }
  const auto bottom = add(m, Vec3(0, 0, -radii.z()));
  auto at = [&](int ring, int k) { return ring_start[ring] + static_cast<std::uint32_t>(k % slices); };
  for (int k = 0; k < slices; ++k) m.triangles.push_back({top, at(0, k), at(0, k + 1)});
  for (int r = 0; r + 1 < stacks - 1; ++r) {
    for (int k = 0; k < slices; ++k) {
      m.triangles.push_back({at(r, k), at(r + 1, k), at(r + 1, k + 1)});
      m.triangles.push_back({at(r, k), at(r + 1, k + 1), at(r, k + 1)});
    }
  }
  const int last = stacks - 2;
  for (int k = 0; k < slices; ++k) m.triangles.push_back({bottom, at(last, k + 1), at(last, k)});
  return m;
}

TriMesh make_sphere(double radius, int slices, int stacks) {
  return make_ellipsoid(Vec3::Constant(radius), slices, stacks);
}

TriMesh make_cylinder(double radius, double height, int slices) {
  TriMesh m;
  const double hz = 0.5 * height;
  const auto top = add(m, Vec3(0, 0, hz));
  const auto bottom = add(m, Vec3(0, 0, -hz));
  for (int k = 0; k < slices; ++k) {
    const double th = 2.0 * kPi * k / slices;
    add(m, Vec3(radius * std::cos(th), radius * std::sin(th), hz));
    add(m, Vec3(radius * std::cos(th), radius * std::sin(th), -hz));
  }
  auto up = [&](int k) { return static_cast<std::uint32_t>(2 + 2 * (k % slices)); };
  auto lo = [&](int k) { return static_cast<std::uint32_t>(3 + 2 * (k % slices)); };
  for (int k = 0; k < slices; ++k) {
    m.triangles.push_back({top, up(k), up(k + 1)});
    m.triangles.push_back({bottom, lo(k + 1), lo(k)});
    m.triangles.push_back({up(k), lo(k), lo(k + 1)});
    m.triangles.push_back({up(k), lo(k + 1), up(k + 1)});
  }
  return m;
}

TriMesh make_cone(double radius, double height, int slices) {
  TriMesh m;
  const double hz = 0.5 * height;
  const auto apex = add(m, Vec3(0, 0, hz));
  const auto base = add(m, Vec3(0, 0, -hz));
  for (int k = 0; k < slices; ++k) {
    const double th = 2.0 * kPi * k / slices;
    add(m, Vec3(radius * std::cos(th), radius * std::sin(th), -hz));
  }
  auto rim = [&](int k) { return static_cast<std::uint32_t>(2 + (k % slices)); };
  for (int k = 0; k < slices; ++k) {
    m.triangles.push_back({apex, rim(k), rim(k + 1)});
    m.triangles.push_back({base, rim(k + 1), rim(k)});
  }
  return m;
}

TriMesh make_octahedron(double radius) {
  TriMesh m;
  m.vertices = {Vec3(radius, 0, 0), Vec3(-radius, 0, 0), Vec3(0, radius, 0),
                Vec3(0, -radius, 0), Vec3(0, 0, radius), Vec3(0, 0, -radius)};
  m.triangles = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                 {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return m;
}

TriMesh make_primitive(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        args.push_back(std::stod(item));
      } catch (const std::logic_error&) {
        fail(ErrorCode::InvalidArgument, "bad primitive argument '" + item + "' in " + spec);
      }
    }
  }
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      fail(ErrorCode::InvalidArgument, "primitive '" + kind + "' takes " + std::to_string(n) + " arguments");
    }
    for (double a : args)
      if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "primitive sizes must be positive: " + spec);
  };
  if (kind == "box") { need(3); return make_box(Vec3(args[0], args[1], args[2])); }
  if (kind == "sphere") { need(1); return make_sphere(args[0]); }
  if (kind == "ellipsoid") { need(3); return make_ellipsoid(Vec3(args[0], args[1], args[2])); }
  if (kind == "cylinder") { need(2); return make_cylinder(args[0], args[1]); }
  if (kind == "cone") { need(2); return make_cone(args[0], args[1]); }
  if (kind == "octahedron") { need(1); return make_octahedron(args[0]); }
  fail(ErrorCode::InvalidArgument, "unknown primitive '" + kind + "'");
}

}  // namespace lfmm::scene
