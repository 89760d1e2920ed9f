#include "lfmm/bench/dataset.hpp"

#include "lfmm/bench/experiments.hpp"
#include "lfmm/core/error.hpp"
#include "lfmm/scene/pfm.hpp"
#include "lfmm/scene/render.hpp"
#include "lfmm/scene/views.hpp"
#include "lfmm/voxel/binvox.hpp"
#include "lfmm/voxel/carve.hpp"
#include "lfmm/voxel/score_io.hpp"
#include "lfmm/voxel/voxelize.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <thread>

namespace lfmm::bench {

std::string sanitize_name(const std::string& name) {
  std::string s;
  for (char ch : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    s += ok ? ch : '_';
  }
  if (s.empty() || s == "." || s == "..") s = "object";
  return s;
}

namespace {

struct ViewRow {
  bool empty = false;
  std::size_t partial = 0;
  std::size_t gt = 0;
};

}  // namespace

DatasetSummary generate_dataset(const ExperimentConfig& cfg, const DatasetParams& params,
                                const std::filesystem::path& out) {
  cfg.validate();
  if (params.max_views < 0) fail(ErrorCode::Config, "max_views must be >= 0");
  auto objects = load_objects(cfg.objects, 0.0);
  const auto angles = scene::enumerate_view_angles(cfg.view_stride);
  std::size_t nviews = angles.size();
  if (params.max_views > 0) nviews = std::min(nviews, static_cast<std::size_t>(params.max_views));

  std::filesystem::create_directories(out);
  std::vector<std::string> dirs;
  for (ObjectModel& obj : objects) {
    // Views orbit the origin, so center the object on it.
    const auto [lo, hi] = obj.mesh.bounds();
    scene::Pose shift;
    shift.translation = -0.5 * (lo + hi);
    obj.mesh = scene::transformed(obj.mesh, shift);
    std::string dir = sanitize_name(obj.name);
    while (std::find(dirs.begin(), dirs.end(), dir) != dirs.end()) dir += "_";
    dirs.push_back(dir);
    std::filesystem::create_directories(out / dir);
  }

  const std::size_t total = objects.size() * nviews;
  std::vector<ViewRow> rows(total);
  std::vector<std::string> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t oi = k / nviews, vi = k % nviews;
      try {
        const scene::Pose pose = scene::view_pose(angles[vi], cfg.view_distance);
        const scene::DepthView view = scene::render_depth(objects[oi].mesh, pose, cfg.camera);
        char stem[32];
        std::snprintf(stem, sizeof stem, "%04zu", vi);
        const auto base = out / dirs[oi] / stem;
        scene::save_pfm(base.string() + "_depth.pfm", scene::to_pfm(view));
        if (view.finite_count() == 0) {
          rows[k].empty = true;
          continue;
        }
        const voxel::VoxelizedView vox = voxel::voxelize_view(view, cfg.grid_dim);
        const voxel::VoxelGrid gt = voxel::voxelize_mesh(
            scene::transformed(objects[oi].mesh, pose.inverse()), vox.grid.frame, cfg.grid_dim);
        voxel::save_binvox(base.string() + "_partial.binvox", vox.grid);
        voxel::save_binvox(base.string() + "_gt.binvox", gt);
        if (params.carved)
          voxel::save_scores(base.string() + "_carved.scores", voxel::carve_free_space(vox.grid, view));
        rows[k].partial = vox.grid.occupied_count();
        rows[k].gt = gt.occupied_count();
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(total)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t k = 0; k < total; ++k)
    if (!errors[k].empty()) fail(ErrorCode::Io, "dataset view " + std::to_string(k) + ": " + errors[k]);

  std::ofstream index(out / "index.csv", std::ios::binary);
  if (!index) fail(ErrorCode::Io, "cannot write " + (out / "index.csv").string());
  index << "object,view,roll,pitch,yaw,partial_voxels,gt_voxels,empty\r\n";
  DatasetSummary summary{objects.size(), total, 0};
  for (std::size_t k = 0; k < total; ++k) {
    const std::size_t oi = k / nviews, vi = k % nviews;
    const auto& a = angles[vi];
    summary.empty_views += rows[k].empty;
    index << dirs[oi] << ',' << vi << ',' << format_number(a.roll) << ',' << format_number(a.pitch) << ','
          << format_number(a.yaw) << ',' << rows[k].partial << ',' << rows[k].gt << ','
          << (rows[k].empty ? 1 : 0) << "\r\n";
  }
  if (!index) fail(ErrorCode::Io, "write failed for index.csv");
  return summary;
}

}  // namespace lfmm::bench
