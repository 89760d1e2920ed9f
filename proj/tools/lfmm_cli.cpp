// Command-line front end. Talks to the library only through lfmm.h.
#include "lfmm/lfmm.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Failure {
  int code;
  std::string message;
};

bool is_config_status(lfmm_status s) { return s == LFMM_CONFIG || s == LFMM_INVALID_ARGUMENT; }

void check(lfmm_status s, const std::string& what) {
  if (s == LFMM_OK) return;
  throw Failure{is_config_status(s) ? kExitConfig : kExitRuntime,
                what + ": " + lfmm_status_name(s) + ": " + lfmm_last_error()};
}

[[noreturn]] void config_error(const std::string& msg) { throw Failure{kExitConfig, msg}; }

// Owning wrappers for the opaque handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};
using Grid = Handle<lfmm_grid, lfmm_grid_free>;
using Mesh = Handle<lfmm_mesh, lfmm_mesh_free>;
using Map = Handle<lfmm_map, lfmm_map_free>;
using Report = Handle<lfmm_report, lfmm_report_free>;

struct CString {
  char* p = nullptr;
  ~CString() { lfmm_free(p); }
};
struct Doubles {
  double* p = nullptr;
  size_t n = 0;
  ~Doubles() { lfmm_free(p); }
};

std::vector<double> parse_numbers(const std::string& text, size_t expected, const std::string& what) {
  std::vector<double> out;
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  std::istringstream is(cleaned);
  double v;
  while (is >> v) out.push_back(v);
  if (!is.eof() || (expected && out.size() != expected))
    config_error(what + ": expected " + std::to_string(expected) + " numbers, got '" + text + "'");
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{kExitRuntime, "cannot write " + path.string()};
}

struct Globals {
  std::optional<uint64_t> seed;
  std::string out;
  int threads = 0;
  std::string config;
};

lfmm_run_args run_args(const Globals& g) {
  lfmm_run_args a{};
  a.config_path = g.config.empty() ? nullptr : g.config.c_str();
  a.seed = g.seed.value_or(0);
  a.seed_set = g.seed.has_value();
  a.threads = g.threads;
  a.out_dir = g.out.empty() ? nullptr : g.out.c_str();
  return a;
}

fs::path out_dir(const Globals& g) { return g.out.empty() ? fs::path(".") : fs::path(g.out); }

fs::path in_out(const Globals& g, const std::string& name) {
  const fs::path p(name);
  return p.is_absolute() ? p : out_dir(g) / p;
}

void print_summary(const Report& r) {
  for (size_t i = 0; i < lfmm_report_summary_count(r.get()); ++i) {
    const char* key = lfmm_report_summary_key(r.get(), i);
    double v = 0;
    check(lfmm_report_summary(r.get(), key, &v), "summary");
    std::printf("%s = %.6g\n", key, v);
  }
}

// Writes the report and reports trial failures; these give exit code 2
// after the partial report is on disk.
int finish_report(const Report& r, const std::string& format) {
  CString path;
  check(lfmm_report_write(r.get(), format.empty() ? nullptr : format.c_str(), nullptr, &path.p), "write report");
  std::printf("report: %s\n", path.p);
  print_summary(r);
  const size_t failed = lfmm_report_failed(r.get());
  if (failed) {
    std::fprintf(stderr, "%zu of %zu trials failed\n", failed, lfmm_report_rows(r.get()));
    return kExitRuntime;
  }
  return 0;
}

void load_mesh(Mesh& m, const std::string& path, const std::string& primitive) {
  if (!path.empty() == !primitive.empty()) config_error("give exactly one of --mesh or --primitive");
  if (!path.empty()) check(lfmm_mesh_load(path.c_str(), m.out()), "load mesh");
  else check(lfmm_mesh_primitive(primitive.c_str(), m.out()), "primitive");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape completion, next-best-view and navigation toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "INI configuration file")->check(CLI::ExistingFile);
  app.fallthrough();

  // dataset gen
  auto* dataset = app.add_subcommand("dataset", "Dataset tools")->require_subcommand(1);
  auto* dataset_gen = dataset->add_subcommand("gen", "Render views and write depth, partial and ground-truth grids");
  int max_views = 0;
  bool carved = false;
  dataset_gen->add_option("--max-views", max_views, "Views per object (0 = all)")->check(CLI::NonNegativeNumber);
  dataset_gen->add_flag("--carved", carved, "Also write free-space carved score grids");

  // complete
  auto* complete = app.add_subcommand("complete", "Complete a voxelized view");
  std::string method = "hull", current, previous, gt_path, pose_text, output = "completion.binvox", mesh_out;
  double noise = 0.0, band_width = 0.0;
  bool scores = false;
  int smoothing = 10;
  complete->add_option("--method", method, "partial | hull | registered | oracle");
  complete->add_option("--current", current, "Current view grid")->required()->check(CLI::ExistingFile);
  complete->add_option("--previous", previous, "Previous view grid")->check(CLI::ExistingFile);
  complete->add_option("--gt", gt_path, "Ground-truth grid for the oracle method")->check(CLI::ExistingFile);
  complete->add_option("--band-width", band_width, "Oracle band half width");
  complete->add_option("--relative-pose", pose_text, "Previous-to-current camera transform, 12 or 16 row-major numbers");
  complete->add_option("--noise", noise, "Odometry noise fraction")->check(CLI::Range(0.0, 1.0));
  complete->add_option("-o,--output", output, "Output grid (relative to --out)");
  complete->add_flag("--scores", scores, "Write raw scores instead of binvox");
  complete->add_option("--mesh", mesh_out, "Also write the reconstructed surface (OFF)");
  complete->add_option("--smoothing", smoothing, "Score smoothing iterations")->check(CLI::NonNegativeNumber);

  // nbv plan
  auto* nbv = app.add_subcommand("nbv", "Next-best-view tools")->require_subcommand(1);
  auto* nbv_plan = nbv->add_subcommand("plan", "Plan the next view from a completion score grid");
  std::string score_path, world_pose;
  double center = 0.5, epsilon = 0.025, standoff = 0.5, min_h = 0.1, max_h = 1.1;
  nbv_plan->add_option("--scores", score_path, "Score grid")->required()->check(CLI::ExistingFile);
  nbv_plan->add_option("--world-pose", world_pose, "World-from-camera transform, 12 or 16 row-major numbers");
  nbv_plan->add_option("--center", center, "Band center");
  nbv_plan->add_option("--epsilon", epsilon, "Band half width");
  nbv_plan->add_option("--standoff", standoff, "Viewing distance (m)");
  nbv_plan->add_option("--min-height", min_h, "Lowest head height (m)");
  nbv_plan->add_option("--max-height", max_h, "Highest head height (m)");

  // pipeline run
  auto* pipeline = app.add_subcommand("pipeline", "Experiment pipeline")->require_subcommand(1);
  auto* pipeline_run = pipeline->add_subcommand("run", "Run the configured experiment");
  std::string kind, format;
  int trials = 0;
  pipeline_run->add_option("--kind", kind, "nbv | noise | nav | e2e");
  pipeline_run->add_option("--trials", trials, "Trial count")->check(CLI::PositiveNumber);
  pipeline_run->add_option("--format", format, "csv | json");

  // map build
  auto* map = app.add_subcommand("map", "Occupancy maps")->require_subcommand(1);
  auto* map_build = map->add_subcommand("build", "Project an environment mesh to a 2D occupancy map");
  std::string env_mesh, env_primitive, bounds_text, robot_text, map_out = "map.pgm";
  double cell = 0.01;
  map_build->add_option("--mesh", env_mesh, "Environment mesh (OFF)")->check(CLI::ExistingFile);
  map_build->add_option("--primitive", env_primitive, "Environment primitive spec");
  map_build->add_option("--cell", cell, "Cell size (m)")->check(CLI::PositiveNumber);
  map_build->add_option("--bounds", bounds_text, "min_x,min_y,max_x,max_y");
  map_build->add_option("--robot", robot_text, "width,depth,height,floor_clearance");
  map_build->add_option("-o,--output", map_out, "Output PGM (relative to --out)");

  // traj discretize
  auto* traj = app.add_subcommand("traj", "Trajectories")->require_subcommand(1);
  auto* traj_disc = traj->add_subcommand("discretize", "Plan on a map and turn the path into motion commands");
  std::string map_path, start_text, goal_text, commands_out = "commands.txt";
  bool replay = false;
  traj_disc->add_option("--map", map_path, "Occupancy map (PGM)")->required()->check(CLI::ExistingFile);
  traj_disc->add_option("--start", start_text, "x,y")->required();
  traj_disc->add_option("--goal", goal_text, "x,y")->required();
  traj_disc->add_option("-o,--output", commands_out, "Command file (relative to --out)");
  traj_disc->add_flag("--replay", replay, "Dead-reckon the commands and print the final pose");

  // nav eval
  auto* nav = app.add_subcommand("nav", "Navigation")->require_subcommand(1);
  auto* nav_eval = nav->add_subcommand("eval", "Random start/goal episodes: plan, discretize, replay");
  std::string nav_map, nav_format;
  int nav_trials = 0;
  nav_eval->add_option("--map", nav_map, "Occupancy map (PGM); default is a generated room")
      ->check(CLI::ExistingFile);
  nav_eval->add_option("--trials", nav_trials, "Episodes")->check(CLI::PositiveNumber);
  nav_eval->add_option("--format", nav_format, "csv | json");

  // memory bench
  auto* mem = app.add_subcommand("memory", "Kernel memory")->require_subcommand(1);
  auto* mem_bench = mem->add_subcommand("bench", "Linearized retrieval error against exact softmax retrieval");
  int dk = 64, dv = 64, length = 32, mem_trials = 50;
  std::vector<int> features = {16, 64, 256};
  mem_bench->add_option("--key-dim", dk)->check(CLI::PositiveNumber);
  mem_bench->add_option("--value-dim", dv)->check(CLI::PositiveNumber);
  mem_bench->add_option("--length", length)->check(CLI::PositiveNumber);
  mem_bench->add_option("--features", features)->delimiter(',')->check(CLI::PositiveNumber);
  mem_bench->add_option("--trials", mem_trials)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (dataset_gen->parsed()) {
      lfmm_dataset_args a{};
      a.run = run_args(g);
      a.max_views = max_views;
      a.carved = carved;
      size_t views = 0, empty = 0;
      check(lfmm_dataset_generate(&a, &views, &empty), "dataset gen");
      std::printf("views: %zu (empty: %zu)\n", views, empty);
      return 0;
    }

    if (complete->parsed()) {
      Grid cur, prev, gt;
      check(lfmm_grid_load(current.c_str(), cur.out()), "load " + current);
      lfmm_completion_args a{};
      a.method = method.c_str();
      a.current = cur.get();
      std::vector<double> pose;
      if (!previous.empty()) {
        check(lfmm_grid_load(previous.c_str(), prev.out()), "load " + previous);
        a.previous = prev.get();
      }
      if (!pose_text.empty()) {
        pose = parse_numbers(pose_text, 0, "--relative-pose");
        if (pose.size() == 12) pose.insert(pose.end(), {0, 0, 0, 1});
        if (pose.size() != 16) config_error("--relative-pose needs 12 or 16 numbers");
        a.relative_pose = pose.data();
      }
      if (!gt_path.empty()) {
        check(lfmm_grid_load(gt_path.c_str(), gt.out()), "load " + gt_path);
        a.ground_truth = gt.get();
      }
      a.band_width = band_width;
      a.odometry_noise = noise;
      a.seed = g.seed.value_or(0);
      Grid result;
      check(lfmm_complete(&a, result.out()), "complete");
      const fs::path path = in_out(g, output);
      fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
      check(lfmm_grid_save(result.get(), path.string().c_str(), scores ? 0 : 1), "save");
      std::printf("occupied: %zu\nwrote: %s\n", lfmm_grid_occupied(result.get()), path.string().c_str());
      if (!mesh_out.empty()) {
        Mesh m;
        check(lfmm_reconstruct(result.get(), cur.get(), smoothing, m.out()), "reconstruct");
        const fs::path mp = in_out(g, mesh_out);
        check(lfmm_mesh_save(m.get(), mp.string().c_str()), "save mesh");
        std::printf("triangles: %zu\nwrote: %s\n", lfmm_mesh_triangles(m.get()), mp.string().c_str());
      }
      return 0;
    }

    if (nbv_plan->parsed()) {
      Grid s;
      check(lfmm_grid_load(score_path.c_str(), s.out()), "load " + score_path);
      lfmm_nbv_args a{s.get(), center, epsilon, standoff, min_h, max_h, nullptr};
      std::vector<double> pose;
      if (!world_pose.empty()) {
        pose = parse_numbers(world_pose, 0, "--world-pose");
        if (pose.size() == 12) pose.insert(pose.end(), {0, 0, 0, 1});
        if (pose.size() != 16) config_error("--world-pose needs 12 or 16 numbers");
        a.world_from_camera = pose.data();
      }
      lfmm_nbv_result r{};
      check(lfmm_nbv_plan(&a, &r), "nbv plan");
      std::printf("band_voxels = %zu\n", r.band_voxels);
      std::printf("direction = %.6g %.6g %.6g\n", r.direction[0], r.direction[1], r.direction[2]);
      std::printf("object_centroid = %.6g %.6g %.6g\n", r.object_centroid[0], r.object_centroid[1],
                  r.object_centroid[2]);
      std::printf("camera_position = %.6g %.6g %.6g\n", r.camera_position[0], r.camera_position[1],
                  r.camera_position[2]);
      std::printf("torso_height = %.6g\nhead_angle_deg = %.6g\n", r.torso_height, r.head_angle * 180.0 / M_PI);
      return 0;
    }

    if (pipeline_run->parsed()) {
      lfmm_run_args a = run_args(g);
      a.kind = kind.empty() ? nullptr : kind.c_str();
      a.trials = trials;
      Report r;
      check(lfmm_run_experiment(&a, r.out()), "pipeline run");
      return finish_report(r, format);
    }

    if (map_build->parsed()) {
      Mesh env;
      load_mesh(env, env_mesh, env_primitive);
      lfmm_robot robot{0.6, 0.6, 1.6, 0.05};
      if (!robot_text.empty()) {
        const auto v = parse_numbers(robot_text, 4, "--robot");
        robot = {v[0], v[1], v[2], v[3]};
      }
      std::vector<double> bounds;
      if (!bounds_text.empty()) bounds = parse_numbers(bounds_text, 4, "--bounds");
      Map m;
      check(lfmm_map_build(env.get(), &robot, cell, bounds.empty() ? nullptr : bounds.data(), m.out()), "map build");
      const fs::path path = in_out(g, map_out);
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      check(lfmm_map_save(m.get(), path.string().c_str()), "map save");
      int w = 0, h = 0;
      size_t blocked = 0;
      lfmm_map_info(m.get(), &w, &h, nullptr, &blocked);
      std::printf("map: %dx%d, blocked %zu\nwrote: %s\n", w, h, blocked, path.string().c_str());
      return 0;
    }

    if (traj_disc->parsed()) {
      Map m;
      check(lfmm_map_load(map_path.c_str(), m.out()), "load map");
      const auto s = parse_numbers(start_text, 2, "--start");
      const auto gl = parse_numbers(goal_text, 2, "--goal");
      Doubles wp;
      double length = 0;
      check(lfmm_plan_path(m.get(), s.data(), gl.data(), &wp.p, &wp.n, &length), "plan");
      CString cmds;
      check(lfmm_discretize(wp.p, wp.n, &cmds.p), "discretize");
      const fs::path path = in_out(g, commands_out);
      write_file(path, cmds.p);
      std::printf("path_length = %.6g\nwaypoints = %zu\nwrote: %s\n", length, wp.n, path.string().c_str());
      if (replay) {
        Doubles poses;
        check(lfmm_dead_reckon(cmds.p, 0.1, 10.0 * M_PI / 180.0, wp.p, 0.0, g.seed.value_or(0), &poses.p, &poses.n),
              "dead reckon");
        const double* last = poses.p + 3 * (poses.n - 1);
        std::printf("final_pose = %.6g %.6g %.6g\nfinal_error = %.6g\n", last[0], last[1], last[2],
                    std::hypot(last[0] - gl[0], last[1] - gl[1]));
      }
      return 0;
    }

    if (nav_eval->parsed()) {
      lfmm_run_args a = run_args(g);
      a.kind = "nav";
      a.trials = nav_trials;
      a.nav_map = nav_map.empty() ? nullptr : nav_map.c_str();
      Report r;
      check(lfmm_run_experiment(&a, r.out()), "nav eval");
      return finish_report(r, nav_format);
    }

    if (mem_bench->parsed()) {
      lfmm_memory_bench_args a{dk, dv, length, mem_trials, features.data(), features.size(), g.seed.value_or(0)};
      Report r;
      check(lfmm_memory_bench(&a, r.out()), "memory bench");
      CString path;
      check(lfmm_report_write(r.get(), "csv", out_dir(g).string().c_str(), &path.p), "write report");
      std::printf("report: %s\n", path.p);
      print_summary(r);
      return 0;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
