#include "lfmm/nav/commands.hpp"

#include "lfmm/core/error.hpp"
#include "lfmm/core/rng.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

namespace lfmm::nav {

const char* to_string(Command c) {
  switch (c) {
    case Command::Forward: return "FORWARD";
    case Command::Left: return "LEFT";
    case Command::Right: return "RIGHT";
    case Command::Done: return "DONE";
  }
  return "?";
}

Command parse_command(const std::string& t) {
  if (t == "FORWARD") return Command::Forward;
  if (t == "LEFT") return Command::Left;
  if (t == "RIGHT") return Command::Right;
  if (t == "DONE") return Command::Done;
  fail(ErrorCode::Parse, "unknown command '" + t + "'");
}

void write_commands(std::ostream& out, const CommandSeq& seq) {
  for (Command c : seq) out << to_string(c) << '\n';
}

CommandSeq read_commands(std::istream& in) {
  CommandSeq seq;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    try {
      seq.push_back(parse_command(line.substr(b)));
    } catch (const Error& e) {
      fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!seq.empty() && seq.back() != Command::Done) fail(ErrorCode::Parse, "command sequence does not end with DONE");
  return seq;
}

CommandSeq discretize(const std::vector<Pose2D>& traj, const DiscretizeParams& p) {
  if (traj.size() < 2) fail(ErrorCode::InvalidArgument, "discretize needs at least 2 poses");
  if (p.lookahead < 1 || !(p.turn_step > 0) || !(p.distance_step > 0) || !(p.distance_tolerance >= 0))
    fail(ErrorCode::InvalidArgument, "invalid discretization parameters");
  CommandSeq out;
  Vec2 pos(traj.front().x, traj.front().y);
  double heading = traj.front().yaw;
  const std::size_t n = traj.size();

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Pose2D& ahead = traj[std::min(i + static_cast<std::size_t>(p.lookahead), n - 1)];
    const Vec2 to_ahead = Vec2(ahead.x, ahead.y) - pos;
    const double target = to_ahead.norm() > p.distance_tolerance ? std::atan2(to_ahead.y(), to_ahead.x()) : ahead.yaw;
    const double diff = wrap_angle(target - heading);
    if (std::abs(diff) > p.angle_threshold) {
      const int turns = static_cast<int>(std::lround(std::abs(diff) / p.turn_step));
      for (int k = 0; k < turns; ++k) out.push_back(diff > 0 ? Command::Left : Command::Right);
      heading = wrap_angle(heading + (diff > 0 ? 1 : -1) * turns * p.turn_step);
    }

    const Vec2 next(traj[i + 1].x, traj[i + 1].y);
    const Vec2 step = Vec2(std::cos(heading), std::sin(heading)) * p.distance_step;
    while ((next - pos).norm() > p.distance_tolerance && (next - pos - step).norm() < (next - pos).norm()) {
      out.push_back(Command::Forward);
      pos += step;
    }
  }
  out.push_back(Command::Done);
  return out;
}

double minecraft_speed(Gait gait) {
  switch (gait) {
    case Gait::Walk: return 4.317;
    case Gait::Sprint: return 5.612;
    case Gait::SprintJump: return 7.127;
  }
  return 0.0;
}

double minecraft_frame_distance(Gait gait) { return minecraft_speed(gait) / 20.0; }

MotionProfile minecraft_profile(Gait gait) { return {minecraft_frame_distance(gait), deg2rad(10.0)}; }

std::vector<Pose2D> dead_reckon(const CommandSeq& commands, const MotionProfile& profile, const Pose2D& start,
                                const MotionNoise& noise) {
  if (!(noise.fraction >= 0.0)) fail(ErrorCode::InvalidArgument, "noise fraction must be non-negative");
  CounterRng rng(noise.seed);
  auto jitter = [&] { return noise.fraction > 0.0 ? 1.0 + noise.fraction * rng.uniform(-1.0, 1.0) : 1.0; };
  std::vector<Pose2D> poses{start};
  Pose2D cur = start;
  for (Command c : commands) {
    switch (c) {
      case Command::Forward: {
        const double d = profile.step * jitter();
        cur.x += d * std::cos(cur.yaw);
        cur.y += d * std::sin(cur.yaw);
        break;
      }
      case Command::Left: cur.yaw = wrap_angle(cur.yaw + profile.turn * jitter()); break;
      case Command::Right: cur.yaw = wrap_angle(cur.yaw - profile.turn * jitter()); break;
      case Command::Done: break;
    }
    poses.push_back(cur);
  }
  return poses;
}

bool goal_decision(const std::vector<double>& scores, double trigger_score, double trigger, double accept_mean) {
  if (scores.size() != 36) fail(ErrorCode::InvalidArgument, "goal decision needs 36 heading scores");
  for (double s : scores)
    if (!(s >= 0.0 && s <= 1.0)) fail(ErrorCode::InvalidArgument, "heading scores must lie in [0, 1]");
  if (!(trigger_score >= trigger)) return false;
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / 36.0;
  return mean > accept_mean;
}

GoalScorer distance_goal_scorer(const Vec2& goal, double radius, double decay) {
  if (!(radius >= 0 && decay > 0)) fail(ErrorCode::InvalidArgument, "invalid scorer parameters");
  return [goal, radius, decay](const Pose2D& pose) {
    const double d = (Vec2(pose.x, pose.y) - goal).norm();
    return d <= radius ? 1.0 : std::exp(-(d - radius) / decay);
  };
}

std::vector<double> spin_scores(const GoalScorer& scorer, const Pose2D& pose) {
  std::vector<double> out;
  out.reserve(36);
  for (int k = 0; k < 36; ++k) out.push_back(scorer({pose.x, pose.y, wrap_angle(pose.yaw + deg2rad(10.0 * k))}));
  return out;
}

}  // namespace lfmm::nav
