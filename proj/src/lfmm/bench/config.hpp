#pragma once

#include "lfmm/bench/ini.hpp"
#include "lfmm/bench/report.hpp"
#include "lfmm/complete/completer.hpp"
#include "lfmm/meshgen/reconstruct.hpp"
#include "lfmm/nav/commands.hpp"
#include "lfmm/nbv/nbv.hpp"
#include "lfmm/scene/camera.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lfmm::bench {

enum class ExperimentKind { Nbv, Noise, Nav, E2e };

ExperimentKind parse_kind(const std::string& s);
const char* to_string(ExperimentKind k);

struct ObjectSource {
  std::string name;
  std::string primitive;              // spec string, or
  std::filesystem::path mesh_path;    // an OFF file
};

// Ten convex and non-convex primitives that fit the 0.3 m voxel window from
// any direction.
std::vector<ObjectSource> default_objects();

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Nbv;
  int trials = 10;
  std::uint64_t seed = 0;
  int threads = 1;
  std::filesystem::path output = "results";
  ReportFormat format = ReportFormat::Csv;

  std::vector<ObjectSource> objects = default_objects();
  double view_stride = 0.6;
  double view_distance = 0.5;
  double max_elevation_deg = 35.0;
  double table_height = 0.75;

  scene::CameraModel camera;
  int grid_dim = 40;

  std::string completer = "oracle";
  complete::OracleBand band;

  nbv::UncertaintySpec uncertainty;
  double standoff = 0.5;
  nbv::HeightLimits height_limits;

  std::vector<double> noise_fractions = {0.0, 0.05};

  bool hausdorff = true;
  meshgen::ReconParams recon;
  double pick_jaccard = 0.5;

  std::optional<std::filesystem::path> nav_map;
  double room_size = 4.0;
  double nav_cell = 0.01;
  int obstacles = 3;
  double motion_noise = 0.0;
  double base_distance = 0.8;
  double success_radius = 0.5;
  nav::RobotSpec robot;

  // Throws Config on out-of-range values or missing files.
  void validate() const;
};

// Relative paths resolve against `base_dir`. Unknown sections or keys are
// Config errors.
ExperimentConfig parse_config(const IniFile& ini, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace lfmm::bench
