#include "lfmm/bench/experiments.hpp"

#include "lfmm/complete/completer.hpp"
#include "lfmm/core/error.hpp"
#include "lfmm/core/rng.hpp"
#include "lfmm/meshgen/reconstruct.hpp"
#include "lfmm/metrics/metrics.hpp"
#include "lfmm/nav/commands.hpp"
#include "lfmm/nbv/nbv.hpp"
#include "lfmm/scene/primitives.hpp"
#include "lfmm/scene/render.hpp"
#include "lfmm/voxel/voxelize.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace lfmm::bench {

namespace {

template <typename Trial>
std::vector<TrialRecord> run_trials(int n, int threads, Trial&& trial) {
  std::vector<TrialRecord> records(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      TrialRecord& rec = records[i];
      rec.trial = i;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        trial(i, rec);
      } catch (const Error& e) {
        rec.error = std::string(to_string(e.code())) + ": " + e.what();
      } catch (const std::exception& e) {
        rec.error = std::string("internal: ") + e.what();
      }
      rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const int workers = std::max(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

struct Observation {
  scene::Pose pose;
  voxel::VoxelizedView vox;
};

Observation observe(const scene::TriMesh& mesh, const scene::Pose& pose, const ExperimentConfig& cfg) {
  const scene::DepthView view = scene::render_depth(mesh, pose, cfg.camera);
  return {pose, voxel::voxelize_view(view, cfg.grid_dim)};
}

// View 1 occupancy fused with an optional second view through the true (or
// noisy) relative pose, optionally closed by the convex hull.
voxel::VoxelGrid fuse(const Observation& first, const Observation* second, double noise, std::uint64_t seed,
                      bool hull) {
  complete::CompletionRequest req;
  req.current = first.vox.grid;
  voxel::VoxelGrid grid;
  if (second) {
    req.previous = second->vox.grid;
    req.relative_pose = first.pose.inverse() * second->pose;
    req.odometry_noise = noise;
    req.seed = seed;
    grid = complete::complete_registered_union(req);
  } else {
    grid = complete::complete_partial(req);
  }
  if (!hull) return grid;
  complete::CompletionRequest hreq;
  hreq.current = grid;
  try {
    return complete::complete_convex_hull(hreq);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateHull) throw;
    return grid;
  }
}

Vec3 mesh_center(const scene::TriMesh& m) {
  const auto [lo, hi] = m.bounds();
  return 0.5 * (lo + hi);
}

double random_elevation(CounterRng& rng, const ExperimentConfig& cfg) {
  return deg2rad(rng.uniform(0.0, cfg.max_elevation_deg));
}

std::string method_key(const std::string& metric, const std::string& method) { return metric + "_" + method; }

// First view, its ground truth and the completion's NBV analysis.
struct FirstView {
  Observation obs;
  scene::TriMesh mesh_cam;  // object in the first camera frame
  voxel::VoxelGrid gt;
  voxel::VoxelGrid completion;
  std::optional<Vec3> v_world;
  Vec3 object_world;
  std::string status;
};

FirstView analyze_first_view(const ObjectModel& obj, const scene::Pose& pose1, std::uint64_t oracle_seed,
                             const ExperimentConfig& cfg, TrialRecord& rec) {
  FirstView f{observe(obj.mesh, pose1, cfg), {}, {}, {}, std::nullopt, Vec3::Zero(), ""};
  f.mesh_cam = scene::transformed(obj.mesh, pose1.inverse());
  const voxel::GridFrame frame = f.obs.vox.grid.frame;
  f.gt = voxel::voxelize_mesh(f.mesh_cam, frame, cfg.grid_dim);

  complete::CompletionRequest req;
  req.current = f.obs.vox.grid;
  req.seed = oracle_seed;
  if (cfg.completer == "oracle") {
    f.completion = complete::complete_oracle(req, f.gt, cfg.band, oracle_seed);
  } else if (cfg.completer == "registered") {
    f.completion = complete::complete_partial(req);
  } else {
    f.completion = complete::make_completer(cfg.completer)->complete(req);
  }
  rec.set("jaccard_completion", metrics::jaccard(f.completion.binarized(), f.gt));

  const auto band = nbv::uncertain_voxels(f.completion, cfg.uncertainty);
  rec.set("band_voxels", static_cast<std::int64_t>(band.size()));
  // Object estimate: everything the completion does not call empty.
  const Vec3 object_cam = nbv::score_centroid(f.completion, cfg.uncertainty.center - cfg.uncertainty.epsilon)
                              .value_or(mesh_center(f.mesh_cam));
  f.object_world = pose1.apply(object_cam);

  // PCA and orientation run in world coordinates so that "horizontal" means
  // the table plane rather than the camera's image plane.
  if (band.empty()) {
    f.status = "empty_band";
  } else {
    std::vector<Vec3> pts;
    pts.reserve(band.size());
    for (const Voxel& v : band) pts.push_back(pose1.apply(voxel::voxel_center(frame, v)));
    try {
      const nbv::PrincipalAxes axes = nbv::principal_axes(pts);
      const nbv::NbvTarget t =
          nbv::plan_target(axes, f.object_world, pose1.translation, cfg.standoff, cfg.height_limits);
      f.v_world = t.v_nbv;
      f.status = "ok";
      rec.set("head_angle_deg", rad2deg(t.head_angle));
      rec.set("torso_height", t.torso_height);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateSet && e.code() != ErrorCode::NearVertical) throw;
      f.status = e.code() == ErrorCode::DegenerateSet ? "degenerate" : "near_vertical";
    }
  }
  rec.set("nbv_status", f.status);
  if (f.v_world) {
    const Vec3& v = *f.v_world;
    rec.set("nbv_x", v.x());
    rec.set("nbv_y", v.y());
    rec.set("nbv_z", v.z());
    const Vec3 to_cam = pose1.translation - f.object_world;
    rec.set("nbv_occluded_side", v.head<2>().dot(to_cam.head<2>()) < 0.0);
  }
  return f;
}

}  // namespace

std::vector<ObjectModel> load_objects(const std::vector<ObjectSource>& sources, double base_height) {
  std::vector<ObjectModel> out;
  for (const ObjectSource& s : sources) {
    scene::TriMesh m = s.primitive.empty() ? scene::load_off(s.mesh_path) : scene::make_primitive(s.primitive);
    const auto [lo, hi] = m.bounds();
    scene::Pose shift;
    shift.translation = Vec3(-0.5 * (lo.x() + hi.x()), -0.5 * (lo.y() + hi.y()), base_height - lo.z());
    out.push_back({s.name, scene::transformed(m, shift)});
  }
  return out;
}

scene::Pose orbit_pose(const Vec3& target, double azimuth, double elevation, double distance) {
  const Vec3 dir(std::cos(elevation) * std::cos(azimuth), std::cos(elevation) * std::sin(azimuth), std::sin(elevation));
  return scene::look_at(target + distance * dir, target);
}

std::vector<std::string> nbv_columns(const ExperimentConfig& cfg) {
  std::vector<std::string> c = {"object",        "azimuth_deg",  "elevation_deg", "random_azimuth_deg",
                                "random_elevation_deg", "band_voxels", "nbv_status", "nbv_x",
                                "nbv_y",         "nbv_z",        "nbv_occluded_side", "head_angle_deg",
                                "torso_height",  "jaccard_completion"};
  for (const auto& m : kViewMethods) c.push_back(method_key("jaccard", m));
  if (cfg.hausdorff)
    for (const auto& m : kViewMethods) c.push_back(method_key("hausdorff_mm", m));
  return c;
}

std::vector<TrialRecord> run_nbv_experiment(const ExperimentConfig& cfg) {
  const auto objects = load_objects(cfg.objects, cfg.table_height);
  const CounterRng root(cfg.seed);
  return run_trials(cfg.trials, cfg.threads, [&](int i, TrialRecord& rec) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(i));
    const ObjectModel& obj = objects[i % objects.size()];
    const double az1 = rng.uniform(0.0, 2 * kPi);
    const double el1 = random_elevation(rng, cfg);
    const double az_r = rng.uniform(0.0, 2 * kPi);
    const double el_r = random_elevation(rng, cfg);
    const std::uint64_t oracle_seed = rng.next_u64();
    const std::uint64_t sample_seed = rng.next_u64();
    rec.set("object", obj.name);
    rec.set("azimuth_deg", rad2deg(az1));
    rec.set("elevation_deg", rad2deg(el1));
    rec.set("random_azimuth_deg", rad2deg(az_r));
    rec.set("random_elevation_deg", rad2deg(el_r));

    const Vec3 center = mesh_center(obj.mesh);
    const scene::Pose pose1 = orbit_pose(center, az1, el1, cfg.view_distance);
    const FirstView f = analyze_first_view(obj, pose1, oracle_seed, cfg, rec);

    for (const std::string& method : kViewMethods) {
      std::optional<scene::Pose> second;
      if (method == "same") second = pose1;
      else if (method == "random") second = orbit_pose(center, az_r, el_r, cfg.view_distance);
      else if (method == "opposite") second = orbit_pose(center, az1 + kPi, el1, cfg.view_distance);
      else if (method == "nbv" && f.v_world)
        second = scene::look_at(f.object_world + cfg.standoff * *f.v_world, f.object_world);

      voxel::VoxelGrid fused;
      if (second) {
        const Observation obs2 = observe(obj.mesh, *second, cfg);
        fused = fuse(f.obs, &obs2, 0.0, 0, true);
      } else {
        fused = fuse(f.obs, nullptr, 0.0, 0, true);
      }
      rec.set(method_key("jaccard", method), metrics::jaccard(fused, f.gt));
      if (cfg.hausdorff) {
        const scene::TriMesh recon = meshgen::reconstruct_mesh(fused, {}, cfg.recon);
        rec.set(method_key("hausdorff_mm", method),
                metrics::hausdorff_symmetric(recon, f.mesh_cam, cfg.recon.hausdorff_samples, sample_seed));
      }
    }
  });
}

std::vector<std::string> noise_columns(const ExperimentConfig& cfg) {
  std::vector<std::string> c = {"object", "azimuth_deg", "elevation_deg", "jaccard_view1"};
  for (double f : cfg.noise_fractions) c.push_back("jaccard_noise_" + format_number(f));
  for (double f : cfg.noise_fractions) c.push_back("jaccard_union_noise_" + format_number(f));
  return c;
}

std::vector<TrialRecord> run_noise_experiment(const ExperimentConfig& cfg) {
  const auto objects = load_objects(cfg.objects, cfg.table_height);
  const CounterRng root(cfg.seed);
  return run_trials(cfg.trials, cfg.threads, [&](int i, TrialRecord& rec) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(i));
    const ObjectModel& obj = objects[i % objects.size()];
    const double az1 = rng.uniform(0.0, 2 * kPi);
    const double el1 = random_elevation(rng, cfg);
    const std::uint64_t noise_seed = rng.next_u64();
    rec.set("object", obj.name);
    rec.set("azimuth_deg", rad2deg(az1));
    rec.set("elevation_deg", rad2deg(el1));

    const Vec3 center = mesh_center(obj.mesh);
    const scene::Pose pose1 = orbit_pose(center, az1, el1, cfg.view_distance);
    const Observation obs1 = observe(obj.mesh, pose1, cfg);
    const Observation obs2 = observe(obj.mesh, orbit_pose(center, az1 + kPi, el1, cfg.view_distance), cfg);
    const voxel::VoxelGrid gt =
        voxel::voxelize_mesh(scene::transformed(obj.mesh, pose1.inverse()), obs1.vox.grid.frame, cfg.grid_dim);
    rec.set("jaccard_view1", metrics::jaccard(obs1.vox.grid, gt));
    // Two bare surface shells barely overlap a solid ground truth, so the
    // headline column closes the fused views with the hull first.
    for (double fnoise : cfg.noise_fractions) {
      const std::string f = format_number(fnoise);
      rec.set("jaccard_noise_" + f, metrics::jaccard(fuse(obs1, &obs2, fnoise, noise_seed, true), gt));
      rec.set("jaccard_union_noise_" + f, metrics::jaccard(fuse(obs1, &obs2, fnoise, noise_seed, false), gt));
    }
  });
}

scene::TriMesh make_room(double size, int obstacles, std::uint64_t seed) {
  scene::TriMesh room;
  const double wall = 0.1, h = 1.0;
  auto add_box = [&](const Vec3& c, const Vec3& s) {
    scene::Pose p;
    p.translation = c;
    scene::append(room, scene::transformed(scene::make_box(s), p));
  };
  add_box({size / 2, wall / 2, h / 2}, {size, wall, h});
  add_box({size / 2, size - wall / 2, h / 2}, {size, wall, h});
  add_box({wall / 2, size / 2, h / 2}, {wall, size, h});
  add_box({size - wall / 2, size / 2, h / 2}, {wall, size, h});
  CounterRng rng(seed);
  for (int k = 0; k < obstacles; ++k) {
    const double sx = rng.uniform(0.2, 0.6), sy = rng.uniform(0.2, 0.6);
    const double cx = rng.uniform(0.2 * size, 0.8 * size), cy = rng.uniform(0.2 * size, 0.8 * size);
    add_box({cx, cy, h / 2}, {sx, sy, h});
  }
  return room;
}

namespace {

double path_length(const std::vector<nav::Pose2D>& poses) {
  double len = 0.0;
  for (std::size_t k = 1; k < poses.size(); ++k)
    len += std::hypot(poses[k].x - poses[k - 1].x, poses[k].y - poses[k - 1].y);
  return len;
}

struct Drive {
  bool planned = false;
  double optimal = 0.0;
  double realized = 0.0;
  nav::Pose2D final_pose;
  std::size_t commands = 0;
};

// Plans, discretizes and replays one start/goal pair.
Drive drive(const nav::OccupancyMap2D& map, const Vec2& start, const Vec2& goal, const ExperimentConfig& cfg,
            std::uint64_t noise_seed, TrialRecord& rec) {
  Drive d;
  d.final_pose = {start.x(), start.y(), 0.0};
  d.optimal = (goal - start).norm();
  try {
    const nav::PlannedPath path = nav::plan_path(map, start, goal);
    const nav::CommandSeq cmds = nav::discretize(path.waypoints);
    const auto poses = nav::dead_reckon(cmds, nav::MotionProfile::robot(), path.waypoints.front(),
                                        {cfg.motion_noise, noise_seed});
    d.planned = true;
    // Shortest geodesic length, ignoring the obstacle-clearance penalty.
    nav::CostParams plain;
    plain.inflation_weight = 0.0;
    d.optimal = nav::plan_path(map, start, goal, plain).length;
    d.realized = path_length(poses);
    d.final_pose = poses.back();
    d.commands = cmds.size();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPath) throw;
    rec.set("failure", std::string("no_path"));
  }
  return d;
}

}  // namespace

std::vector<std::string> nav_columns() {
  return {"start_x",     "start_y",     "goal_x",  "goal_y",        "optimal_length", "path_length",
          "final_error", "commands",    "success", "goal_decision", "failure"};
}

std::vector<TrialRecord> run_nav_experiment(const ExperimentConfig& cfg) {
  const CounterRng root(cfg.seed);
  nav::OccupancyMap2D map;
  if (cfg.nav_map) {
    map = nav::load_map(*cfg.nav_map);
  } else {
    const scene::TriMesh room = make_room(cfg.room_size, cfg.obstacles, root.split(~0ULL).next_u64());
    map = nav::build_map(room, cfg.robot, cfg.nav_cell, nav::MapBounds{Vec2::Zero(), Vec2::Constant(cfg.room_size)});
  }
  std::vector<nav::Cell> free;
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x)
      if (!map.is_blocked(x, y)) free.push_back({x, y});
  if (free.empty()) fail(ErrorCode::InvalidArgument, "navigation map has no free cell");

  return run_trials(cfg.trials, cfg.threads, [&](int i, TrialRecord& rec) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(i));
    const auto pick = [&] { return free[rng.uniform_int(0, static_cast<std::int64_t>(free.size()) - 1)]; };
    const Vec2 start = map.cell_center(pick());
    const Vec2 goal = map.cell_center(pick());
    const std::uint64_t noise_seed = rng.next_u64();
    rec.set("start_x", start.x());
    rec.set("start_y", start.y());
    rec.set("goal_x", goal.x());
    rec.set("goal_y", goal.y());
    const Drive d = drive(map, start, goal, cfg, noise_seed, rec);
    const double err = (Vec2(d.final_pose.x, d.final_pose.y) - goal).norm();
    const auto scorer = nav::distance_goal_scorer(goal, cfg.success_radius);
    rec.set("optimal_length", d.optimal);
    rec.set("path_length", d.realized);
    rec.set("final_error", err);
    rec.set("commands", static_cast<std::int64_t>(d.commands));
    rec.set("success", d.planned && err <= cfg.success_radius);
    rec.set("goal_decision", nav::goal_decision(nav::spin_scores(scorer, d.final_pose), scorer(d.final_pose)));
  });
}

std::vector<std::string> e2e_columns() {
  return {"object",      "azimuth_deg",  "elevation_deg", "nbv_status", "nbv_x",       "nbv_y",
          "nbv_z",       "nbv_occluded_side", "head_angle_deg", "torso_height", "jaccard_completion", "band_voxels",
          "base_goal_x", "base_goal_y",  "optimal_length", "path_length", "final_error", "success",
          "jaccard",     "pick_success", "failure"};
}

std::vector<TrialRecord> run_e2e_experiment(const ExperimentConfig& cfg) {
  const Vec2 room_center = Vec2::Constant(cfg.room_size / 2);
  auto objects = load_objects(cfg.objects, cfg.table_height);
  std::vector<nav::OccupancyMap2D> maps;
  for (ObjectModel& obj : objects) {
    scene::Pose shift;
    shift.translation = Vec3(room_center.x(), room_center.y(), 0.0);
    obj.mesh = scene::transformed(obj.mesh, shift);
    scene::TriMesh world = make_room(cfg.room_size, 0, 0);
    scene::Pose table;
    table.translation = Vec3(room_center.x(), room_center.y(), cfg.table_height / 2);
    scene::append(world, scene::transformed(scene::make_box(Vec3(0.4, 0.4, cfg.table_height)), table));
    scene::append(world, obj.mesh);
    maps.push_back(nav::build_map(world, cfg.robot, cfg.nav_cell,
                                  nav::MapBounds{Vec2::Zero(), Vec2::Constant(cfg.room_size)}));
  }
  const CounterRng root(cfg.seed);
  return run_trials(cfg.trials, cfg.threads, [&](int i, TrialRecord& rec) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(i));
    const std::size_t oi = static_cast<std::size_t>(i) % objects.size();
    const ObjectModel& obj = objects[oi];
    const double az1 = rng.uniform(0.0, 2 * kPi);
    const double el1 = random_elevation(rng, cfg);
    const std::uint64_t oracle_seed = rng.next_u64();
    const std::uint64_t noise_seed = rng.next_u64();
    rec.set("object", obj.name);
    rec.set("azimuth_deg", rad2deg(az1));
    rec.set("elevation_deg", rad2deg(el1));

    const Vec3 center = mesh_center(obj.mesh);
    const scene::Pose pose1 = orbit_pose(center, az1, el1, cfg.view_distance);
    const FirstView f = analyze_first_view(obj, pose1, oracle_seed, cfg, rec);

    Vec3 dir2(-std::cos(az1), -std::sin(az1), 0.0);
    if (f.v_world && f.v_world->head<2>().norm() > 1e-6) dir2 = *f.v_world;
    const Vec2 heading2 = dir2.head<2>().normalized();
    const Vec2 base1 = center.head<2>() + cfg.base_distance * Vec2(std::cos(az1), std::sin(az1));
    const Vec2 base2 = center.head<2>() + cfg.base_distance * heading2;
    rec.set("base_goal_x", base2.x());
    rec.set("base_goal_y", base2.y());

    const Drive d = drive(maps[oi], base1, base2, cfg, noise_seed, rec);
    const Vec2 reached(d.final_pose.x, d.final_pose.y);
    const double err = (reached - base2).norm();
    const bool success = d.planned && err <= cfg.success_radius;
    rec.set("optimal_length", d.optimal);
    rec.set("path_length", d.realized);
    rec.set("final_error", err);
    rec.set("success", success);

    double jac = 0.0;
    if (d.planned) {
      // The head looks at the object from wherever the base ended up.
      const Vec2 off = reached - center.head<2>();
      const double az2 = off.norm() > 1e-9 ? std::atan2(off.y(), off.x()) : std::atan2(heading2.y(), heading2.x());
      const double el2 = std::atan2(dir2.z(), dir2.head<2>().norm());
      const Observation obs2 = observe(obj.mesh, orbit_pose(center, az2, el2, cfg.view_distance), cfg);
      jac = metrics::jaccard(fuse(f.obs, &obs2, 0.0, 0, true), f.gt);
    }
    rec.set("jaccard", jac);
    rec.set("pick_success", success && jac >= cfg.pick_jaccard);
  });
}

namespace {

std::vector<metrics::Episode> episodes_of(const std::vector<TrialRecord>& records, bool with_pick) {
  std::vector<metrics::Episode> eps;
  for (const TrialRecord& r : records) {
    if (!r.error.empty()) continue;
    metrics::Episode e;
    e.success = r.number("success") == 1.0;
    e.optimal_length = r.number("optimal_length");
    e.path_length = r.number("path_length");
    if (with_pick) e.pick_success = r.number("pick_success") == 1.0;
    eps.push_back(e);
  }
  return eps;
}

std::vector<std::pair<std::string, double>> nav_summary(const std::vector<TrialRecord>& records, bool with_pick) {
  std::vector<std::pair<std::string, double>> out;
  const auto eps = episodes_of(records, with_pick);
  if (eps.empty()) return out;
  out.emplace_back("success_rate", metrics::success_rate(eps));
  out.emplace_back("spl", metrics::spl(eps));
  if (with_pick) out.emplace_back("e2espl", metrics::e2espl(eps));
  try {
    out.emplace_back("oor", metrics::oor(eps));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoSuccesses) throw;
  }
  return out;
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case ExperimentKind::Nbv:
      return make_report("nbv", nbv_columns(cfg), run_nbv_experiment(cfg));
    case ExperimentKind::Noise:
      return make_report("noise", noise_columns(cfg), run_noise_experiment(cfg));
    case ExperimentKind::Nav: {
      const auto recs = run_nav_experiment(cfg);
      return make_report("nav", nav_columns(), recs, nav_summary(recs, false));
    }
    case ExperimentKind::E2e: {
      const auto recs = run_e2e_experiment(cfg);
      return make_report("e2e", e2e_columns(), recs, nav_summary(recs, true));
    }
  }
  fail(ErrorCode::Config, "unknown experiment kind");
}

std::size_t failed_trials(const Report& report) {
  std::size_t n = 0;
  for (const auto& row : report.rows)
    if (!std::holds_alternative<std::monostate>(row.back())) ++n;
  return n;
}

}  // namespace lfmm::bench
