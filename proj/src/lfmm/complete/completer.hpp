#pragma once

#include "lfmm/core/rng.hpp"
#include "lfmm/scene/pose.hpp"
#include "lfmm/scene/tactile.hpp"
#include "lfmm/voxel/grid.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace lfmm::complete {

using ScoreGrid = voxel::VoxelGrid;

struct CompletionRequest {
  voxel::VoxelGrid current;
  std::optional<voxel::VoxelGrid> previous;
  std::optional<scene::TactileSet> tactile;
  // Maps points in the previous view's camera frame into the current one.
  std::optional<scene::Pose> relative_pose;
  double odometry_noise = 0.0;
  std::uint64_t seed = 0;

  // Throws InvalidArgument on a broken request.
  void validate() const;
};

// Occupied current-view voxels plus tactile contacts, scores 1.
ScoreGrid complete_partial(const CompletionRequest& req);

// Solid convex hull of the occupied voxel centers and tactile contacts.
ScoreGrid complete_convex_hull(const CompletionRequest& req);

// Previous-view voxels moved into the current frame through the (noisy)
// relative pose, unioned with the current view.
ScoreGrid complete_registered_union(const CompletionRequest& req);

// Relative pose as the robot would report it after driving the arc with the
// given per-step noise fraction. Steps are at most `step_length` meters and
// `turn_step` radians; every step's translation and turn are scaled by an
// independent uniform error in [-noise, noise].
scene::Pose noisy_relative_pose(const scene::Pose& truth, double noise, CounterRng& rng,
                                double step_length = 0.1, double turn_step = deg2rad(10.0));

struct OracleBand {
  double center = 0.5;
  double width = 0.025;
  // Chebyshev radius around hidden ground-truth surface voxels that forms
  // the uncertain region.
  int shell = 1;
};

// Voxels whose center can see `camera` (in grid coordinates of the frame)
// without passing through another occupied ground-truth voxel.
std::vector<char> visible_mask(const voxel::VoxelGrid& ground_truth,
                               const Vec3& camera = Vec3::Zero());

// The region the oracle marks uncertain: hidden voxels within `shell` of a
// hidden ground-truth surface voxel.
std::vector<char> occluded_band_mask(const voxel::VoxelGrid& ground_truth, int shell = 1,
                                     const Vec3& camera = Vec3::Zero());

// Test double for a learned completer. Visible voxels get 0.95 / 0.05,
// the hidden band around the unseen surface gets center +- uniform(0, width),
// remaining hidden voxels follow the ground truth with 0.95 / 0.05.
ScoreGrid complete_oracle(const CompletionRequest& req, const voxel::VoxelGrid& ground_truth,
                          const OracleBand& band, std::uint64_t seed,
                          const Vec3& camera = Vec3::Zero());

class Completer {
 public:
  virtual ~Completer() = default;
  virtual std::string name() const = 0;
  virtual ScoreGrid complete(const CompletionRequest& req) const = 0;
};

// "partial", "hull", "registered". The oracle needs ground truth and is
// built with make_oracle_completer.
std::unique_ptr<Completer> make_completer(const std::string& name);
std::unique_ptr<Completer> make_oracle_completer(voxel::VoxelGrid ground_truth, OracleBand band,
                                                 std::uint64_t seed, Vec3 camera = Vec3::Zero());

}  // namespace lfmm::complete
