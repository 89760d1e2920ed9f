#pragma once

#include "lfmm/nav/planner.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lfmm::nav {

enum class Command { Forward, Left, Right, Done };

using CommandSeq = std::vector<Command>;

const char* to_string(Command c);
Command parse_command(const std::string& token);

// One mnemonic per line. Reading rejects unknown tokens and a non-empty
// sequence that does not end with DONE.
void write_commands(std::ostream& out, const CommandSeq& seq);
CommandSeq read_commands(std::istream& in);

struct DiscretizeParams {
  int lookahead = 25;
  double angle_threshold = deg2rad(20.0);
  double turn_step = deg2rad(10.0);
  double distance_step = 0.1;
  double distance_tolerance = 0.05;
};

// Turns a dense trajectory into discrete commands. The robot is simulated
// along the way: at each waypoint it faces the pose `lookahead` steps ahead
// (clamped to the last one) when that direction is off by more than the
// threshold, turning in whole steps, then moves forward while that brings it
// closer to the next waypoint than the tolerance allows.
CommandSeq discretize(const std::vector<Pose2D>& trajectory, const DiscretizeParams& params = {});

struct MotionProfile {
  double step = 0.1;              // meters per FORWARD
  double turn = deg2rad(10.0);    // radians per LEFT / RIGHT

  static MotionProfile robot() { return {}; }
};

enum class Gait { Walk, Sprint, SprintJump };

// Minecraft player speeds (m/s) integrated over one 20 fps frame.
double minecraft_speed(Gait gait);
double minecraft_frame_distance(Gait gait);
MotionProfile minecraft_profile(Gait gait);
// Minecraft counts heading from north, which is +y here.
inline constexpr double kMinecraftNorth = kPi / 2;

struct MotionNoise {
  double fraction = 0.0;  // each step and turn scaled by 1 + uniform(-f, f)
  std::uint64_t seed = 0;
};

// Point-mass integration x += d cos(yaw), y += d sin(yaw). Returns the start
// pose followed by one pose per command; DONE repeats the last pose.
std::vector<Pose2D> dead_reckon(const CommandSeq& commands, const MotionProfile& profile = {},
                                const Pose2D& start = {}, const MotionNoise& noise = {});

// Goal check after a verification spin: true iff the score that triggered
// the spin reached `trigger` and the mean over the 36 headings exceeds
// `accept_mean`.
bool goal_decision(const std::vector<double>& scores_by_heading, double trigger_score, double trigger = 0.99,
                   double accept_mean = 0.9);

using GoalScorer = std::function<double(const Pose2D& pose)>;

// 1 within `radius` of the goal, exp(-(d - radius) / decay) outside.
GoalScorer distance_goal_scorer(const Vec2& goal, double radius = 0.5, double decay = 0.5);

// Scores of the 36 headings of a spin in place at `pose`.
std::vector<double> spin_scores(const GoalScorer& scorer, const Pose2D& pose);

}  // namespace lfmm::nav
