#include "lfmm/lfmm.h"

#include "lfmm/bench/config.hpp"
#include "lfmm/bench/dataset.hpp"
#include "lfmm/bench/experiments.hpp"
#include "lfmm/bench/report.hpp"
#include "lfmm/complete/completer.hpp"
#include "lfmm/core/error.hpp"
#include "lfmm/memory/memory.hpp"
#include "lfmm/meshgen/reconstruct.hpp"
#include "lfmm/metrics/metrics.hpp"
#include "lfmm/nav/commands.hpp"
#include "lfmm/nav/map.hpp"
#include "lfmm/nav/planner.hpp"
#include "lfmm/nbv/nbv.hpp"
#include "lfmm/scene/mesh.hpp"
#include "lfmm/scene/pose.hpp"
#include "lfmm/scene/primitives.hpp"
#include "lfmm/scene/views.hpp"
#include "lfmm/voxel/binvox.hpp"
#include "lfmm/voxel/score_io.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

struct lfmm_grid {
  lfmm::voxel::VoxelGrid grid;
};
struct lfmm_mesh {
  lfmm::scene::TriMesh mesh;
};
struct lfmm_map {
  lfmm::nav::OccupancyMap2D map;
};
struct lfmm_report {
  lfmm::bench::Report report;
  std::string output_dir;
  lfmm::bench::ReportFormat format = lfmm::bench::ReportFormat::Csv;
};

namespace {

using namespace lfmm;

thread_local std::string g_last_error;

lfmm_status to_status(ErrorCode c) { return static_cast<lfmm_status>(static_cast<int>(c)); }

template <typename F>
lfmm_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return LFMM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return LFMM_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

double* dup_poses(const std::vector<nav::Pose2D>& poses) {
  double* p = static_cast<double*>(std::malloc(sizeof(double) * 3 * std::max<std::size_t>(poses.size(), 1)));
  if (!p) throw std::bad_alloc();
  for (std::size_t i = 0; i < poses.size(); ++i) {
    p[3 * i] = poses[i].x;
    p[3 * i + 1] = poses[i].y;
    p[3 * i + 2] = poses[i].yaw;
  }
  return p;
}

scene::Pose pose_from_rows(const double* m) {
  scene::Pose pose;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) pose.rotation(r, c) = m[4 * r + c];
    pose.translation[r] = m[4 * r + 3];
  }
  if (!scene::is_rotation(pose.rotation, 1e-6)) fail(ErrorCode::InvalidArgument, "pose rotation is not orthonormal");
  return pose;
}

bench::ExperimentConfig resolve_config(const lfmm_run_args& a) {
  require(!(a.config_path && a.config_text), "give a config path or config text, not both");
  bench::ExperimentConfig cfg;
  if (a.config_path) cfg = bench::load_config(a.config_path);
  else if (a.config_text) cfg = bench::parse_config_text(a.config_text, ".");
  if (cfg.objects.empty()) cfg.objects = bench::default_objects();
  if (a.kind) cfg.kind = bench::parse_kind(a.kind);
  if (a.seed_set) cfg.seed = a.seed;
  if (a.threads < 0) fail(ErrorCode::Config, "threads must be >= 1");
  if (a.threads > 0) cfg.threads = a.threads;
  if (a.trials < 0) fail(ErrorCode::Config, "trials must be >= 1");
  if (a.trials > 0) cfg.trials = a.trials;
  if (a.out_dir) cfg.output = a.out_dir;
  if (a.nav_map) cfg.nav_map = std::filesystem::path(a.nav_map);
  cfg.validate();
  return cfg;
}

bench::ReportFormat parse_format(const char* s) {
  const std::string f = s ? s : "csv";
  if (f == "csv") return bench::ReportFormat::Csv;
  if (f == "json") return bench::ReportFormat::Json;
  fail(ErrorCode::Config, "unknown report format '" + f + "'");
}

}  // namespace

extern "C" {

const char* lfmm_last_error(void) { return g_last_error.c_str(); }

const char* lfmm_status_name(lfmm_status status) {
  if (status == LFMM_OK) return "ok";
  if (status == LFMM_INTERNAL) return "internal";
  if (status >= LFMM_INVALID_ARGUMENT && status <= LFMM_NO_SUCCESSES)
    return to_string(static_cast<ErrorCode>(static_cast<int>(status)));
  return "unknown";
}

const char* lfmm_version(void) { return "0.1.0"; }

void lfmm_free(void* p) { std::free(p); }

lfmm_status lfmm_grid_load(const char* path, lfmm_grid** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new lfmm_grid{voxel::load_grid(path)};
  });
}

lfmm_status lfmm_grid_save(const lfmm_grid* grid, const char* path, int binary) {
  return guarded([&] {
    require(grid && path, "null argument");
    if (binary) voxel::save_binvox(path, grid->grid.binarized());
    else voxel::save_scores(path, grid->grid);
  });
}

void lfmm_grid_free(lfmm_grid* grid) { delete grid; }

int lfmm_grid_dim(const lfmm_grid* grid) { return grid ? grid->grid.dim : 0; }

double lfmm_grid_voxel_size(const lfmm_grid* grid) { return grid ? grid->grid.frame.voxel_size : 0.0; }

size_t lfmm_grid_occupied(const lfmm_grid* grid) { return grid ? grid->grid.occupied_count() : 0; }

lfmm_status lfmm_grid_jaccard(const lfmm_grid* a, const lfmm_grid* b, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = metrics::jaccard(a->grid, b->grid);
  });
}

lfmm_status lfmm_complete(const lfmm_completion_args* args, lfmm_grid** out) {
  return guarded([&] {
    require(args && args->method && args->current && out, "null argument");
    complete::CompletionRequest req;
    req.current = args->current->grid;
    if (args->previous) req.previous = args->previous->grid;
    if (args->relative_pose) req.relative_pose = pose_from_rows(args->relative_pose);
    req.odometry_noise = args->odometry_noise;
    req.seed = args->seed;
    if (std::string(args->method) == "oracle") {
      require(args->ground_truth != nullptr, "oracle completion needs a ground-truth grid");
      complete::OracleBand band;
      if (args->band_width > 0.0) band.width = args->band_width;
      *out = new lfmm_grid{complete::complete_oracle(req, args->ground_truth->grid, band, args->seed)};
      return;
    }
    auto completer = complete::make_completer(args->method);
    *out = new lfmm_grid{completer->complete(req)};
  });
}

lfmm_status lfmm_mesh_load(const char* path, lfmm_mesh** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new lfmm_mesh{scene::load_off(path)};
  });
}

lfmm_status lfmm_mesh_primitive(const char* spec, lfmm_mesh** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = new lfmm_mesh{scene::make_primitive(spec)};
  });
}

lfmm_status lfmm_mesh_save(const lfmm_mesh* mesh, const char* path) {
  return guarded([&] {
    require(mesh && path, "null argument");
    scene::save_off(path, mesh->mesh);
  });
}

void lfmm_mesh_free(lfmm_mesh* mesh) { delete mesh; }

size_t lfmm_mesh_triangles(const lfmm_mesh* mesh) { return mesh ? mesh->mesh.triangles.size() : 0; }

lfmm_status lfmm_reconstruct(const lfmm_grid* completion, const lfmm_grid* observed, int smoothing_iters,
                             lfmm_mesh** out) {
  return guarded([&] {
    require(completion && out, "null argument");
    meshgen::ReconParams params;
    params.smoothing_iters = smoothing_iters;
    std::vector<Vec3> pts;
    if (observed) {
      require_same_frame(completion->grid, observed->grid);
      for (const Voxel& v : observed->grid.occupied_voxels()) pts.push_back(observed->grid.center(v));
    }
    *out = new lfmm_mesh{meshgen::reconstruct_mesh(completion->grid, pts, params)};
  });
}

lfmm_status lfmm_hausdorff(const lfmm_mesh* a, const lfmm_mesh* b, size_t samples, uint64_t seed, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    require(samples > 0 && samples < (1u << 30), "samples out of range");
    *out = metrics::hausdorff_symmetric(a->mesh, b->mesh, static_cast<int>(samples), seed);
  });
}

lfmm_status lfmm_nbv_plan(const lfmm_nbv_args* args, lfmm_nbv_result* out) {
  return guarded([&] {
    require(args && args->scores && out, "null argument");
    const voxel::VoxelGrid& g = args->scores->grid;
    nbv::UncertaintySpec spec{args->center, args->epsilon};
    spec.validate();
    const scene::Pose world = args->world_from_camera ? pose_from_rows(args->world_from_camera) : scene::Pose{};
    const auto band = nbv::uncertain_voxels(g, spec);
    std::vector<Vec3> pts;
    for (const Voxel& v : band) pts.push_back(world.apply(g.center(v)));
    const nbv::PrincipalAxes axes = nbv::principal_axes(pts);
    const Vec3 obj = world.apply(nbv::score_centroid(g, spec.center - spec.epsilon).value_or(axes.centroid));
    const nbv::NbvTarget t = nbv::plan_target(axes, obj, world.translation, args->standoff,
                                              {args->min_height, args->max_height});
    const Vec3 cam = obj + args->standoff * t.v_nbv;
    for (int k = 0; k < 3; ++k) {
      out->direction[k] = t.v_nbv[k];
      out->object_centroid[k] = obj[k];
      out->camera_position[k] = cam[k];
    }
    out->torso_height = t.torso_height;
    out->head_angle = t.head_angle;
    out->band_voxels = band.size();
  });
}

lfmm_status lfmm_map_build(const lfmm_mesh* env, const lfmm_robot* robot, double cell, const double* bounds,
                           lfmm_map** out) {
  return guarded([&] {
    require(env && out, "null argument");
    nav::RobotSpec spec;
    if (robot) spec = {robot->width, robot->depth, robot->height, robot->floor_clearance};
    std::optional<nav::MapBounds> b;
    if (bounds) b = nav::MapBounds{Vec2(bounds[0], bounds[1]), Vec2(bounds[2], bounds[3])};
    *out = new lfmm_map{nav::build_map(env->mesh, spec, cell, b)};
  });
}

lfmm_status lfmm_map_save(const lfmm_map* map, const char* path) {
  return guarded([&] {
    require(map && path, "null argument");
    nav::save_map(path, map->map);
  });
}

lfmm_status lfmm_map_load(const char* path, lfmm_map** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new lfmm_map{nav::load_map(path)};
  });
}

void lfmm_map_free(lfmm_map* map) { delete map; }

void lfmm_map_info(const lfmm_map* map, int* width, int* height, double* cell, size_t* blocked) {
  if (!map) return;
  if (width) *width = map->map.width;
  if (height) *height = map->map.height;
  if (cell) *cell = map->map.cell_size;
  if (blocked) *blocked = map->map.blocked_count();
}

lfmm_status lfmm_plan_path(const lfmm_map* map, const double start[2], const double goal[2], double** waypoints,
                           size_t* n, double* length) {
  return guarded([&] {
    require(map && start && goal && waypoints && n, "null argument");
    const nav::PlannedPath path = nav::plan_path(map->map, Vec2(start[0], start[1]), Vec2(goal[0], goal[1]));
    *waypoints = dup_poses(path.waypoints);
    *n = path.waypoints.size();
    if (length) *length = path.length;
  });
}

lfmm_status lfmm_discretize(const double* waypoints, size_t n, char** commands) {
  return guarded([&] {
    require((waypoints || n == 0) && commands, "null argument");
    std::vector<nav::Pose2D> traj(n);
    for (size_t i = 0; i < n; ++i) traj[i] = {waypoints[3 * i], waypoints[3 * i + 1], waypoints[3 * i + 2]};
    std::ostringstream os;
    nav::write_commands(os, nav::discretize(traj));
    *commands = dup_string(os.str());
  });
}

lfmm_status lfmm_dead_reckon(const char* commands, double step, double turn, const double start[3], double noise,
                             uint64_t seed, double** poses, size_t* n) {
  return guarded([&] {
    require(commands && poses && n, "null argument");
    require(step > 0 && turn > 0, "step and turn must be positive");
    std::istringstream is(commands);
    const nav::CommandSeq seq = nav::read_commands(is);
    nav::Pose2D s;
    if (start) s = {start[0], start[1], start[2]};
    const auto out = nav::dead_reckon(seq, {step, turn}, s, {noise, seed});
    *poses = dup_poses(out);
    *n = out.size();
  });
}

lfmm_status lfmm_run_experiment(const lfmm_run_args* args, lfmm_report** out) {
  return guarded([&] {
    require(args && out, "null argument");
    const bench::ExperimentConfig cfg = resolve_config(*args);
    auto* r = new lfmm_report{bench::run_experiment(cfg), cfg.output.string(), cfg.format};
    *out = r;
  });
}

lfmm_status lfmm_report_write(const lfmm_report* report, const char* format, const char* dir, char** main_path) {
  return guarded([&] {
    require(report, "null argument");
    const bench::ReportFormat f = format ? parse_format(format) : report->format;
    const auto path = bench::emit_report(report->report, f, dir ? std::string(dir) : report->output_dir);
    if (main_path) *main_path = dup_string(path.string());
  });
}

lfmm_status lfmm_report_csv(const lfmm_report* report, char** out) {
  return guarded([&] {
    require(report && out, "null argument");
    std::ostringstream os;
    bench::write_csv(os, report->report);
    *out = dup_string(os.str());
  });
}

size_t lfmm_report_rows(const lfmm_report* report) { return report ? report->report.rows.size() : 0; }

size_t lfmm_report_failed(const lfmm_report* report) { return report ? bench::failed_trials(report->report) : 0; }

const char* lfmm_report_output_dir(const lfmm_report* report) { return report ? report->output_dir.c_str() : ""; }

const char* lfmm_report_format(const lfmm_report* report) {
  if (!report) return "";
  return report->format == bench::ReportFormat::Json ? "json" : "csv";
}

lfmm_status lfmm_report_summary(const lfmm_report* report, const char* key, double* out) {
  return guarded([&] {
    require(report && key && out, "null argument");
    for (const auto& [k, v] : report->report.summary)
      if (k == key) {
        *out = v;
        return;
      }
    fail(ErrorCode::InvalidArgument, std::string("no summary entry '") + key + "'");
  });
}

size_t lfmm_report_summary_count(const lfmm_report* report) { return report ? report->report.summary.size() : 0; }

const char* lfmm_report_summary_key(const lfmm_report* report, size_t i) {
  if (!report || i >= report->report.summary.size()) return nullptr;
  return report->report.summary[i].first.c_str();
}

void lfmm_report_free(lfmm_report* report) { delete report; }

lfmm_status lfmm_memory_bench(const lfmm_memory_bench_args* args, lfmm_report** out) {
  return guarded([&] {
    require(args && out, "null argument");
    memory::MemoryBenchParams p;
    p.key_dim = args->key_dim;
    p.value_dim = args->value_dim;
    p.length = args->length;
    p.trials = args->trials;
    p.seed = args->seed;
    if (args->feature_counts) p.feature_counts.assign(args->feature_counts, args->feature_counts + args->n_feature_counts);
    std::vector<bench::TrialRecord> recs;
    for (const memory::MemoryBenchRow& row : memory::run_memory_bench(p)) {
      bench::TrialRecord rec;
      rec.trial = static_cast<std::int64_t>(recs.size());
      rec.set("m", static_cast<std::int64_t>(row.m));
      rec.set("median_rel_error", row.median_rel_error);
      rec.set("mean_rel_error", row.mean_rel_error);
      recs.push_back(std::move(rec));
    }
    *out = new lfmm_report{bench::make_report("memory", {"m", "median_rel_error", "mean_rel_error"}, recs), ".",
                           bench::ReportFormat::Csv};
  });
}

lfmm_status lfmm_dataset_generate(const lfmm_dataset_args* args, size_t* views, size_t* empty_views) {
  return guarded([&] {
    require(args, "null argument");
    const bench::ExperimentConfig cfg = resolve_config(args->run);
    const auto s = bench::generate_dataset(cfg, {args->max_views, args->carved != 0}, cfg.output);
    if (views) *views = s.views;
    if (empty_views) *empty_views = s.empty_views;
  });
}

lfmm_status lfmm_view_count(double stride, size_t* out) {
  return guarded([&] {
    require(out, "null argument");
    require(stride > 0, "stride must be positive");
    *out = scene::enumerate_view_angles(stride).size();
  });
}

}  // extern "C"
