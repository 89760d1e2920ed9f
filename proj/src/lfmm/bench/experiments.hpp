#pragma once

#include "lfmm/bench/config.hpp"
#include "lfmm/bench/report.hpp"
#include "lfmm/nav/map.hpp"
#include "lfmm/scene/mesh.hpp"
#include "lfmm/scene/pose.hpp"

#include <string>
#include <vector>

namespace lfmm::bench {

struct ObjectModel {
  std::string name;
  scene::TriMesh mesh;
};

// Loads every configured object, centered on the origin in x and y with its
// base at `base_height`.
std::vector<ObjectModel> load_objects(const std::vector<ObjectSource>& sources, double base_height);

// Camera `distance` from `target` at the given azimuth and elevation
// (radians), looking at the target.
scene::Pose orbit_pose(const Vec3& target, double azimuth, double elevation, double distance);

// Second-view strategies compared by the NBV experiment.
inline const std::vector<std::string> kViewMethods = {"single", "same", "random", "opposite", "nbv"};

std::vector<std::string> nbv_columns(const ExperimentConfig& cfg);
std::vector<std::string> noise_columns(const ExperimentConfig& cfg);
std::vector<std::string> nav_columns();
std::vector<std::string> e2e_columns();

// Trial i uses CounterRng(seed).split(i) and object i mod #objects, so the
// output does not depend on the thread count.
std::vector<TrialRecord> run_nbv_experiment(const ExperimentConfig& cfg);
std::vector<TrialRecord> run_noise_experiment(const ExperimentConfig& cfg);
std::vector<TrialRecord> run_nav_experiment(const ExperimentConfig& cfg);
std::vector<TrialRecord> run_e2e_experiment(const ExperimentConfig& cfg);

// Square room with walls and `obstacles` random boxes, as a mesh.
scene::TriMesh make_room(double size, int obstacles, std::uint64_t seed);

// Runs the configured experiment and assembles its report, including the
// navigation summary (success rate, SPL, OOR, E2ESPL) where it applies.
Report run_experiment(const ExperimentConfig& cfg);

// Trials that raised an error.
std::size_t failed_trials(const Report& report);

}  // namespace lfmm::bench
