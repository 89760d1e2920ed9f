#include "lfmm/nav/map.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/scene/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace lfmm::nav {

void RobotSpec::validate() const {
  if (!(width > 0 && depth > 0 && height > 0)) fail(ErrorCode::InvalidArgument, "robot extents must be positive");
  if (!(floor_tolerance >= 0 && floor_tolerance < height))
    fail(ErrorCode::InvalidArgument, "floor tolerance must lie in [0, height)");
}

OccupancyMap2D::OccupancyMap2D(int w, int h, double cs, const Vec2& o)
    : cell_size(cs), width(w), height(h), origin(o) {
  validate();
  blocked.assign(static_cast<std::size_t>(w) * h, 0);
}

void OccupancyMap2D::validate() const {
  if (width <= 0 || height <= 0) fail(ErrorCode::InvalidArgument, "map dimensions must be positive");
  if (!(cell_size > 0)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
}

Vec2 OccupancyMap2D::cell_center(const Cell& c) const {
  return origin + Vec2(c.x + 0.5, c.y + 0.5) * cell_size;
}

std::optional<Cell> OccupancyMap2D::cell_of(const Vec2& p) const {
  const Vec2 g = (p - origin) / cell_size;
  const int x = static_cast<int>(std::floor(g.x()));
  const int y = static_cast<int>(std::floor(g.y()));
  if (!in_bounds(x, y)) return std::nullopt;
  return Cell{x, y};
}

std::size_t OccupancyMap2D::blocked_count() const {
  return static_cast<std::size_t>(std::count(blocked.begin(), blocked.end(), std::uint8_t{1}));
}

bool triangle_box_overlap(const Vec3& center, const Vec3& h, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 v[3] = {a - center, b - center, c - center};
  const Vec3 e[3] = {v[1] - v[0], v[2] - v[1], v[0] - v[2]};

  auto separated = [&](const Vec3& axis) {
    if (axis.squaredNorm() == 0.0) return false;
    const double p0 = axis.dot(v[0]), p1 = axis.dot(v[1]), p2 = axis.dot(v[2]);
    const double r = h.x() * std::abs(axis.x()) + h.y() * std::abs(axis.y()) + h.z() * std::abs(axis.z());
    return std::min({p0, p1, p2}) > r || std::max({p0, p1, p2}) < -r;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (separated(Vec3::Unit(j).cross(e[i]))) return false;
  for (int j = 0; j < 3; ++j)
    if (separated(Vec3::Unit(j))) return false;
  return !separated(e[0].cross(e[1]));
}

namespace {

// Parity of crossings along a fixed, slightly skewed direction.
bool inside_closed(const scene::TriMesh& env, const Vec3& p) {
  const Vec3 dir = Vec3(1.0, 0.000123457, 0.000234567).normalized();
  int hits = 0;
  for (std::size_t t = 0; t < env.triangles.size(); ++t)
    if (scene::intersect_triangle(p, dir, env.corner(t, 0), env.corner(t, 1), env.corner(t, 2), 0.0)) ++hits;
  return hits % 2 == 1;
}

}  // namespace

OccupancyMap2D build_map(const scene::TriMesh& env, const RobotSpec& robot, double cell,
                         const std::optional<MapBounds>& bounds) {
  robot.validate();
  scene::validate(env);
  if (!(cell > 0)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
  MapBounds bb;
  if (bounds) {
    bb = *bounds;
  } else {
    if (env.vertices.empty()) fail(ErrorCode::InvalidArgument, "empty environment needs explicit map bounds");
    const auto [lo, hi] = env.bounds();
    const Vec2 pad(robot.width / 2 + cell, robot.depth / 2 + cell);
    bb = {lo.head<2>() - pad, hi.head<2>() + pad};
  }
  if (!(bb.max.x() > bb.min.x() && bb.max.y() > bb.min.y()))
    fail(ErrorCode::InvalidArgument, "map bounds are empty");
  const int w = std::max(1, static_cast<int>(std::ceil((bb.max.x() - bb.min.x()) / cell - 1e-9)));
  const int h = std::max(1, static_cast<int>(std::ceil((bb.max.y() - bb.min.y()) / cell - 1e-9)));
  OccupancyMap2D map(w, h, cell, bb.min);

  const double z0 = robot.floor_tolerance, z1 = robot.height;
  const Vec3 half(robot.width / 2, robot.depth / 2, (z1 - z0) / 2);
  const double zc = (z0 + z1) / 2;
  for (std::size_t t = 0; t < env.triangles.size(); ++t) {
    const Vec3 a = env.corner(t, 0), b = env.corner(t, 1), c = env.corner(t, 2);
    const double tz_lo = std::min({a.z(), b.z(), c.z()}), tz_hi = std::max({a.z(), b.z(), c.z()});
    if (tz_hi < z0 || tz_lo > z1) continue;
    const double xlo = std::min({a.x(), b.x(), c.x()}) - half.x(), xhi = std::max({a.x(), b.x(), c.x()}) + half.x();
    const double ylo = std::min({a.y(), b.y(), c.y()}) - half.y(), yhi = std::max({a.y(), b.y(), c.y()}) + half.y();
    const int cx0 = std::max(0, static_cast<int>(std::floor((xlo - map.origin.x()) / cell - 0.5)));
    const int cx1 = std::min(w - 1, static_cast<int>(std::ceil((xhi - map.origin.x()) / cell - 0.5)));
    const int cy0 = std::max(0, static_cast<int>(std::floor((ylo - map.origin.y()) / cell - 0.5)));
    const int cy1 = std::min(h - 1, static_cast<int>(std::ceil((yhi - map.origin.y()) / cell - 0.5)));
    for (int y = cy0; y <= cy1; ++y)
      for (int x = cx0; x <= cx1; ++x) {
        const std::size_t i = map.index(x, y);
        if (map.blocked[i]) continue;
        const Vec2 cc = map.cell_center({x, y});
        if (triangle_box_overlap(Vec3(cc.x(), cc.y(), zc), half, a, b, c)) map.blocked[i] = 1;
      }
  }

  // Free regions that touch no triangle are either open floor or the
  // interior of a solid; one parity test per 4-connected region decides.
  std::vector<int> region(map.blocked.size(), -1);
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < region.size(); ++seed) {
    if (map.blocked[seed] || region[seed] >= 0) continue;
    std::vector<std::size_t> members;
    stack.push_back(seed);
    region[seed] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      members.push_back(i);
      const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
      const int nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
      for (const auto& n : nb) {
        if (!map.in_bounds(n[0], n[1])) continue;
        const std::size_t j = map.index(n[0], n[1]);
        if (map.blocked[j] || region[j] >= 0) continue;
        region[j] = 1;
        stack.push_back(j);
      }
    }
    const Vec2 cc = map.cell_center({static_cast<int>(seed % w), static_cast<int>(seed / w)});
    if (inside_closed(env, Vec3(cc.x(), cc.y(), zc)))
      for (std::size_t i : members) map.blocked[i] = 1;
  }
  return map;
}

void save_map(const std::filesystem::path& path, const OccupancyMap2D& map) {
  map.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << "P5\n" << map.width << ' ' << map.height << "\n255\n";
  std::vector<char> row(map.width);
  for (int y = map.height - 1; y >= 0; --y) {
    for (int x = 0; x < map.width; ++x) row[x] = static_cast<char>(map.is_blocked(x, y) ? 0 : 255);
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) fail(ErrorCode::Io, "failed writing " + path.string());

  std::ofstream meta(path.string() + ".meta");
  if (!meta) fail(ErrorCode::Io, "cannot write map sidecar for " + path.string());
  meta << std::setprecision(17);
  meta << "origin_x = " << map.origin.x() << "\norigin_y = " << map.origin.y() << "\ncell_size = "
       << map.cell_size << "\n";
}

OccupancyMap2D load_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (magic != "P5" || w <= 0 || h <= 0 || maxval != 255) fail(ErrorCode::Parse, "not an 8-bit P5 PGM: " + path.string());
  in.get();
  std::vector<char> data(static_cast<std::size_t>(w) * h);
  in.read(data.data(), static_cast<std::streamsize>(data.size()));
  if (in.gcount() != static_cast<std::streamsize>(data.size())) fail(ErrorCode::Parse, "truncated PGM " + path.string());

  std::ifstream meta(path.string() + ".meta");
  if (!meta) fail(ErrorCode::Io, "missing map sidecar " + path.string() + ".meta");
  double ox = 0, oy = 0, cs = 0;
  bool has_x = false, has_y = false, has_cs = false;
  std::string line;
  while (std::getline(meta, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    double v = 0;
    std::istringstream vs(value);
    if (!(vs >> v)) fail(ErrorCode::Parse, "bad sidecar value for " + key);
    if (key == "origin_x") { ox = v; has_x = true; }
    else if (key == "origin_y") { oy = v; has_y = true; }
    else if (key == "cell_size") { cs = v; has_cs = true; }
    else fail(ErrorCode::Parse, "unknown sidecar key " + key);
  }
  if (!has_x || !has_y || !has_cs) fail(ErrorCode::Parse, "incomplete map sidecar");
  OccupancyMap2D map(w, h, cs, Vec2(ox, oy));
  for (int r = 0; r < h; ++r)
    for (int x = 0; x < w; ++x)
      map.blocked[map.index(x, h - 1 - r)] = static_cast<unsigned char>(data[static_cast<std::size_t>(r) * w + x]) < 128;
  return map;
}

}  // namespace lfmm::nav
