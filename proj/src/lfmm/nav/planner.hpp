#pragma once

#include "lfmm/nav/map.hpp"

#include <vector>

namespace lfmm::nav {

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
};

struct CostParams {
  double inflation_radius = 0.3;  // meters
  double inflation_weight = 4.0;  // penalty factor at the obstacle
  double inflation_decay = 0.1;   // meters
};

// Euclidean distance (meters) from each cell center to the nearest blocked
// cell center; +inf when the map has no blocked cell.
std::vector<double> obstacle_distance(const OccupancyMap2D& map);

// Multiplicative penalty added to the unit step cost of entering a cell.
std::vector<double> inflation_penalty(const OccupancyMap2D& map, const CostParams& params = {});

// Edge cost of moving from `a` to the 8-neighbor `b`, or +inf when the move
// is not allowed (blocked, off the map, or cutting a blocked corner).
double step_cost(const OccupancyMap2D& map, const std::vector<double>& penalty, const Cell& a, const Cell& b);

struct PlannedPath {
  std::vector<Cell> cells;
  std::vector<Pose2D> waypoints;  // cell centers; yaw faces the next waypoint
  double cost = 0.0;
  double length = 0.0;  // meters
};

// Dijkstra over 8-connected free cells; equal costs resolve toward the lower
// cell index. Throws NoPath when the goal is unreachable or either end is
// blocked or off the map.
PlannedPath plan_path(const OccupancyMap2D& map, const Vec2& start, const Vec2& goal,
                      const CostParams& params = {});

}  // namespace lfmm::nav
