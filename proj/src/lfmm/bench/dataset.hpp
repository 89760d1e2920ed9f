#pragma once

#include "lfmm/bench/config.hpp"

#include <filesystem>

namespace lfmm::bench {

struct DatasetParams {
  // 0 keeps every enumerated view.
  int max_views = 0;
  // Stores carved score grids alongside the binary partial views.
  bool carved = false;
};

struct DatasetSummary {
  std::size_t objects = 0;
  std::size_t views = 0;
  std::size_t empty_views = 0;
};

// For every object and enumerated view writes
//   <out>/<object>/<view>_depth.pfm, _partial.binvox, _gt.binvox
// plus <out>/index.csv listing object, view, roll, pitch, yaw and occupancy.
DatasetSummary generate_dataset(const ExperimentConfig& cfg, const DatasetParams& params,
                                const std::filesystem::path& out);

// Filesystem-safe version of an object name.
std::string sanitize_name(const std::string& name);

}  // namespace lfmm::bench
