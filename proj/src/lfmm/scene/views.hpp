#pragma once

#include "lfmm/scene/pose.hpp"

#include <vector>

namespace lfmm::scene {

struct ViewAngles {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

// Values start, start + stride, ... strictly below `end`.
std::vector<double> half_open_range(double start, double end, double stride);

// Every (roll, pitch, yaw) with roll, yaw in [0, 2pi) and pitch in
// [-pi/2, pi/2), stepped by `stride`. Roll varies fastest.
std::vector<ViewAngles> enumerate_view_angles(double stride = 0.6);

// Camera pose for a view: the object frame is rotated by the Euler angles and
// the camera sits `distance` meters from the object origin, looking at it.
Pose view_pose(const ViewAngles& angles, double distance = 0.5);

std::vector<Pose> enumerate_views(double stride = 0.6, double distance = 0.5);

// Eight poses turned about world z in 45 degree steps from `base`; the
// translation is unchanged.
std::vector<Pose> panorama_poses(const Pose& base);

}  // namespace lfmm::scene
