#pragma once

#include "lfmm/core/types.hpp"
#include "lfmm/scene/mesh.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace lfmm::nav {

struct RobotSpec {
  double width = 0.6;   // x extent
  double depth = 0.6;   // y extent
  double height = 1.6;
  double floor_tolerance = 0.05;  // geometry below this is ignored

  void validate() const;
};

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

// Top-down occupancy grid. Cell (0,0) has its minimum corner at `origin`;
// x grows with column, y with row.
struct OccupancyMap2D {
  double cell_size = 0.01;
  int width = 0;
  int height = 0;
  Vec2 origin = Vec2::Zero();
  std::vector<std::uint8_t> blocked;

  OccupancyMap2D() = default;
  OccupancyMap2D(int width, int height, double cell_size, const Vec2& origin);

  void validate() const;
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  bool is_blocked(int x, int y) const { return blocked[index(x, y)] != 0; }
  bool is_free(const Cell& c) const { return in_bounds(c.x, c.y) && !is_blocked(c.x, c.y); }
  Vec2 cell_center(const Cell& c) const;
  std::optional<Cell> cell_of(const Vec2& p) const;
  std::size_t blocked_count() const;
};

struct MapBounds {
  Vec2 min;
  Vec2 max;
};

// Exact box/triangle overlap (separating axis test); touching counts.
bool triangle_box_overlap(const Vec3& box_center, const Vec3& half_extent, const Vec3& a, const Vec3& b,
                          const Vec3& c);

// A cell is blocked when the robot box standing on it (from the floor
// tolerance up to its height) meets any triangle, or lies inside a closed
// part of the environment. Without bounds the map covers the mesh extent
// padded by the robot footprint.
OccupancyMap2D build_map(const scene::TriMesh& env, const RobotSpec& robot = {}, double cell = 0.01,
                         const std::optional<MapBounds>& bounds = std::nullopt);

// P5 PGM (free 255, blocked 0, first row = largest y) plus a `key = value`
// sidecar with origin and cell size at `<path>.meta`.
void save_map(const std::filesystem::path& pgm_path, const OccupancyMap2D& map);
OccupancyMap2D load_map(const std::filesystem::path& pgm_path);

}  // namespace lfmm::nav
