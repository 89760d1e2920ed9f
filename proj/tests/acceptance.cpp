// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fail.
// Usage: acceptance [path/to/lfmm]   (the CLI is needed for criterion 11)

#include "lfmm/bench/experiments.hpp"
#include "lfmm/core/rng.hpp"
#include "lfmm/memory/memory.hpp"
#include "lfmm/meshgen/marching_cubes.hpp"
#include "lfmm/meshgen/reconstruct.hpp"
#include "lfmm/metrics/metrics.hpp"
#include "lfmm/nav/commands.hpp"
#include "lfmm/nav/planner.hpp"
#include "lfmm/nbv/nbv.hpp"
#include "lfmm/scene/views.hpp"
#include "lfmm/voxel/binvox.hpp"
#include "lfmm/voxel/voxelize.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>

using namespace lfmm;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and limits.
constexpr double kViewSweepSeconds = 1.0;
constexpr double kMetricSeconds = 5.0;
constexpr double kVoxelSizeTol = 1e-12;
constexpr double kNbvOccludedRate = 0.95;
constexpr double kNbvBeatsRandomRate = 0.80;
constexpr double kNbvSeconds = 120.0;
constexpr double kNoiseRate = 0.90;
constexpr double kPcaAngleTol = 1e-6;
constexpr double kReplayTol = 0.15;
constexpr double kBellmanFordRelTol = 1e-9;
constexpr double kMemoryWeightTol = 1e-12;
constexpr double kMonteCarloTol = 0.01;
constexpr double kOrderTol = 1e-9;
constexpr double kMemorySeconds = 60.0;
constexpr double kSphereAreaTol = 0.10;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

voxel::VoxelGrid random_grid(std::uint64_t seed, int dim, double p) {
  CounterRng rng(seed);
  voxel::VoxelGrid g(dim, {Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 1)), voxel::fixed_voxel_size()});
  for (double& s : g.scores) s = rng.uniform() < p ? 1.0 : 0.0;
  return g;
}

Outcome view_sweep() {
  Timer t;
  const auto views = scene::enumerate_views(0.6);
  const double s = t.seconds();
  return {views.size() == 726 && s < kViewSweepSeconds, fmt("%.0f poses in %.3f s", double(views.size()), s)};
}

Outcome metric_identities() {
  Timer t;
  bool ok = true;
  voxel::VoxelGrid a(40, {}), b(40, {}), c(40, {});
  a.at(1, 1, 1) = a.at(2, 2, 2) = 1.0;
  b.at(1, 1, 1) = 1.0;
  c.at(30, 30, 30) = 1.0;
  ok = ok && metrics::jaccard(a, a) == 1.0 && metrics::jaccard(a, c) == 0.0 && metrics::jaccard(a, b) == 0.5;
  CounterRng rng(2024);
  int spl_ok = 0, e2e_ok = 0;
  for (int set = 0; set < 1000; ++set) {
    std::vector<metrics::Episode> eps(1 + rng.uniform_int(0, 30));
    for (auto& e : eps) {
      e.success = rng.uniform() < 0.6;
      e.pick_success = e.success && rng.uniform() < 0.5;
      e.optimal_length = rng.uniform(0.1, 20.0);
      e.path_length = rng.uniform(0.0, 40.0);
    }
    spl_ok += metrics::spl(eps) <= metrics::success_rate(eps);
    e2e_ok += metrics::e2espl(eps) <= metrics::spl(eps);
  }
  ok = ok && spl_ok == 1000 && e2e_ok == 1000;
  const double s = t.seconds();
  return {ok && s < kMetricSeconds, fmt("SPL<=SR %.0f/1000, E2ESPL<=SPL %.0f/1000, %.3f s", spl_ok, e2e_ok, s)};
}

Outcome voxelization() {
  const double vs = voxel::fixed_voxel_size();
  const bool size_ok = std::abs(vs - 0.3 / 38) <= kVoxelSizeTol;
  CounterRng rng(3);
  std::vector<Vec3> pts;
  for (int i = 0; i < 10000; ++i) pts.emplace_back(rng.uniform(-0.14, 0.14), rng.uniform(-0.14, 0.14), rng.uniform(0.4, 0.68));
  const auto v = voxel::voxelize_points(pts);
  double worst = 0.0;
  bool located = v.dropped == 0;
  for (const Vec3& p : pts) {
    const auto x = v.grid.locate(p);
    if (!x || v.grid.at(*x) != 1.0) {
      located = false;
      continue;
    }
    worst = std::max(worst, (v.grid.center(*x) - p).norm());
  }
  const double bound = vs * std::sqrt(3.0) / 2;
  int exact = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_grid(seed, 40, 0.02 + 0.009 * double(seed));
    std::stringstream ss;
    voxel::write_binvox(ss, g);
    const std::string bytes = ss.str();
    const auto back = voxel::read_binvox(ss);
    std::stringstream again;
    voxel::write_binvox(again, back);
    exact += back.scores == g.scores && back.frame == g.frame && again.str() == bytes;
  }
  return {size_ok && located && worst <= bound && exact == 100,
          fmt("voxel size error %.1e, worst round trip %.5f <= %.5f, binvox exact %.0f/100", std::abs(vs - 0.3 / 38),
              worst, bound, exact)};
}

Outcome nbv_direction() {
  Timer t;
  bench::ExperimentConfig cfg;
  cfg.kind = bench::ExperimentKind::Nbv;
  cfg.trials = 100;  // 10 objects x 10 seeds: trial i uses object i mod 10
  cfg.seed = 0;
  cfg.hausdorff = false;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto recs = bench::run_nbv_experiment(cfg);
  int occluded = 0, beats = 0, ties = 0, errors = 0;
  for (const auto& r : recs) {
    if (!r.error.empty()) ++errors;
    occluded += r.number("nbv_occluded_side") == 1.0;
    const double jn = r.number("jaccard_nbv"), jr = r.number("jaccard_random");
    beats += jn > jr;
    ties += jn == jr;
  }
  const double s = t.seconds();
  const double n = static_cast<double>(recs.size());
  return {errors == 0 && occluded >= kNbvOccludedRate * n && beats >= kNbvBeatsRandomRate * n && s < kNbvSeconds,
          fmt("occluded side %.0f/100, NBV beats random %.0f/100 (ties %.0f), %.1f s", occluded, beats, ties, s)};
}

Outcome noise_trend() {
  bench::ExperimentConfig cfg;
  cfg.kind = bench::ExperimentKind::Noise;
  cfg.trials = 100;
  cfg.seed = 0;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto recs = bench::run_noise_experiment(cfg);
  int below = 0, below_union = 0, errors = 0;
  for (const auto& r : recs) {
    if (!r.error.empty()) ++errors;
    below += r.number("jaccard_noise_0.05") < r.number("jaccard_noise_0");
    below_union += r.number("jaccard_union_noise_0.05") < r.number("jaccard_union_noise_0");
  }
  return {errors == 0 && below >= kNoiseRate * recs.size(),
          fmt("noisy below clean %.0f/100 (bare union without closure %.0f/100)", below, below_union)};
}

Outcome pca() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CounterRng rng(seed);
    const Mat3 rot = Eigen::Quaterniond(rng.normal(), rng.normal(), rng.normal(), rng.normal()).normalized().toRotationMatrix();
    const Vec3 sigma(rng.uniform(0.05, 0.2), rng.uniform(0.02, 0.1), rng.uniform(0.001, 0.015));
    std::vector<Vec3> pts;
    for (int i = 0; i < 400; ++i) pts.push_back(rot * Vec3(rng.normal() * sigma.x(), rng.normal() * sigma.y(), rng.normal() * sigma.z()));
    std::array<double, 3> mean{};
    for (const auto& p : pts)
      for (int k = 0; k < 3; ++k) mean[k] += p[k] / pts.size();
    std::array<std::array<double, 3>, 3> cov{};
    for (const auto& p : pts)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) cov[i][j] += (p[i] - mean[i]) * (p[j] - mean[j]) / pts.size();
    const auto [e, evals] = test::jacobi_min(cov);
    const Vec3 got = nbv::principal_axes(pts).eigenvectors.col(0);
    const double cosang = std::min(1.0, std::abs(got.normalized().dot(Vec3(e[0], e[1], e[2]).normalized())));
    worst = std::max(worst, std::acos(cosang));
  }
  return {worst <= kPcaAngleTol, fmt("worst angular error %.2e rad over 100 clouds", worst)};
}

Outcome replay_and_planner() {
  nav::OccupancyMap2D free_map(300, 300, 0.01, Vec2::Zero());
  CounterRng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vec2 s(rng.uniform(0.05, 2.95), rng.uniform(0.05, 2.95)), g(rng.uniform(0.05, 2.95), rng.uniform(0.05, 2.95));
    const auto path = nav::plan_path(free_map, s, g);
    const auto poses = nav::dead_reckon(nav::discretize(path.waypoints), nav::MotionProfile::robot(), path.waypoints.front());
    const auto& last = path.waypoints.back();
    worst = std::max(worst, std::hypot(poses.back().x - last.x, poses.back().y - last.y));
  }
  int equal = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CounterRng r(seed + 500);
    const int w = 10 + static_cast<int>(r.uniform_int(0, 40)), h = 10 + static_cast<int>(r.uniform_int(0, 40));
    nav::OccupancyMap2D m(w, h, 0.05, Vec2::Zero());
    for (auto& b : m.blocked) b = r.uniform() < 0.25;
    const auto pen = nav::inflation_penalty(m);
    nav::Cell s, g;
    do s = {static_cast<int>(r.uniform_int(0, w - 1)), static_cast<int>(r.uniform_int(0, h - 1))};
    while (!m.is_free(s));
    const auto dist = test::bellman_ford(m, pen, s);
    // Farthest reachable cell as the goal.
    double best = -1.0;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const double d = dist[m.index(x, y)];
        if (std::isfinite(d) && d > best) best = d, g = {x, y};
      }
    const auto p = nav::plan_path(m, m.cell_center(s), m.cell_center(g));
    equal += std::abs(p.cost - best) <= kBellmanFordRelTol * std::max(1.0, best);
  }
  return {worst <= kReplayTol && equal == 20,
          fmt("worst replay error %.3f m over 50 pairs, Bellman-Ford agreement %.0f/20", worst, equal)};
}

Outcome minecraft() {
  auto r3 = [](double v) { return std::round(v * 1000.0) / 1000.0; };
  const auto p = nav::dead_reckon({nav::Command::Forward}, nav::minecraft_profile(nav::Gait::Walk), {0, 0, nav::kMinecraftNorth});
  const double walk = std::hypot(p.back().x, p.back().y);
  const double sprint = nav::minecraft_frame_distance(nav::Gait::Sprint);
  const double jump = nav::minecraft_frame_distance(nav::Gait::SprintJump);
  return {r3(walk) == 0.216 && r3(sprint) == 0.281 && r3(jump) == 0.356 && std::abs(p.back().x) < 1e-12,
          fmt("walk %.3f, sprint %.3f, sprint-jump %.3f m per frame", walk, sprint, jump)};
}

Outcome memory_math() {
  Timer t;
  bool ok = true;
  double worst_sum = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    CounterRng rng(s);
    memory::MemoryBank bank(16, 4);
    for (int j = 0; j < 1 + static_cast<int>(s); ++j) bank.add(memory::random_unit(16, rng), memory::random_unit(4, rng));
    const auto w = memory::retrieval_weights(bank, memory::random_unit(16, rng) * (1.0 + 10.0 * double(s)));
    worst_sum = std::max(worst_sum, std::abs(w.sum() - 1.0));
    ok = ok && w.minCoeff() >= 0.0;
  }
  ok = ok && worst_sum <= kMemoryWeightTol;
  {
    CounterRng rng(1);
    memory::MemoryBank one(8, 3);
    const auto v = memory::random_unit(3, rng);
    one.add(memory::random_unit(8, rng), v);
    ok = ok && memory::retrieve_exact(one, memory::random_unit(8, rng)) == v;
    memory::LinearizedMemory lin(memory::FeatureMap(32, 8, 2), 3);
    lin.add(memory::random_unit(8, rng), v);
    ok = ok && (memory::retrieve_linearized(lin, memory::random_unit(8, rng)) - v).norm() <= 1e-12;
  }
  const memory::FeatureMap phi(100000, 8, 11);
  CounterRng rng(12);
  double worst_mc = 0.0;
  for (int i = 0; i < 10; ++i) {
    const memory::Vector x = memory::random_unit(8, rng) * rng.uniform();
    const memory::Vector y = memory::random_unit(8, rng) * rng.uniform();
    worst_mc = std::max(worst_mc, std::abs(memory::kernel_estimate(phi, x, y) / std::exp(x.dot(y)) - 1.0));
  }
  memory::MemoryBenchParams bp;
  bp.feature_counts = {16, 256};
  const auto rows = memory::run_memory_bench(bp);
  const double ratio = rows[1].median_rel_error / rows[0].median_rel_error;
  CounterRng orng(13);
  memory::MemoryBank bank(16, 8);
  for (int j = 0; j < 64; ++j) bank.add(memory::random_unit(16, orng), memory::random_unit(8, orng));
  const memory::FeatureMap small(64, 16, 14);
  memory::LinearizedMemory fwd(small, 8), rev(small, 8);
  const auto k = bank.keys(), v = bank.values();
  for (int j = 0; j < 64; ++j) fwd.add(k.row(j).transpose(), v.row(j).transpose());
  for (int j = 63; j >= 0; --j) rev.add(k.row(j).transpose(), v.row(j).transpose());
  const double order = std::max((fwd.accumulator() - rev.accumulator()).cwiseAbs().maxCoeff(),
                                (fwd.normalizer() - rev.normalizer()).cwiseAbs().maxCoeff());
  const double s = t.seconds();
  ok = ok && worst_mc <= kMonteCarloTol && ratio <= 0.5 && order <= kOrderTol && s < kMemorySeconds;
  return {ok, fmt("weight sum error %.1e, Monte-Carlo worst %.4f, m=256/m=16 median error %.3f, order diff %.1e",
                  worst_sum, worst_mc, ratio, order) +
                  fmt(", %.2f s", s)};
}

Outcome mesh_pipeline() {
  voxel::VoxelGrid block(14, {Vec3::Zero(), 0.01});
  for (int z = 2; z < 12; ++z)
    for (int y = 2; y < 12; ++y)
      for (int x = 2; x < 12; ++x) block.at(x, y, z) = 1.0;
  const auto m = meshgen::marching_cubes(block);
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edges;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) ++edges[std::minmax(t[k], t[(k + 1) % 3])];
  bool watertight = !edges.empty();
  for (const auto& [e, n] : edges) watertight = watertight && n == 2;

  const double r = 10.0, vs = 0.005;
  voxel::VoxelGrid sphere(28, {Vec3::Zero(), vs});
  const Vec3 c = Vec3::Constant(14 * vs);
  for (int z = 0; z < 28; ++z)
    for (int y = 0; y < 28; ++y)
      for (int x = 0; x < 28; ++x)
        sphere.at(x, y, z) = std::clamp(0.5 + 0.25 * (r * vs - (sphere.center({x, y, z}) - c).norm()) / vs, 0.0, 1.0);
  const double area = meshgen::marching_cubes(sphere).surface_area() / (4 * kPi * r * r * vs * vs);

  int superset = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_grid(seed + 900, 16, 0.1 + 0.005 * double(seed));
    const auto before = g;
    meshgen::fill_gaps(g);
    bool ok = true;
    for (std::size_t i = 0; i < g.size(); ++i) ok = ok && (before.scores[i] <= 0.5 || g.scores[i] > 0.5);
    superset += ok;
  }
  return {watertight && std::abs(area - 1.0) <= kSphereAreaTol && superset == 100,
          fmt("block watertight %.0f, sphere area ratio %.4f, fill-gaps superset %.0f/100", watertight, area, superset)};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)), {});
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const fs::path dir = fs::temp_directory_path() / "lfmm_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "run.ini") << "[experiment]\nkind = nbv\ntrials = 4\nseed = 17\n[metrics]\nhausdorff_samples = 500\n";
  std::vector<std::string> csvs;
  for (int threads : {1, 4})
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / ("t" + std::to_string(threads) + "_" + std::to_string(rep));
      const std::string cmd = "\"" + cli + "\" --config \"" + (dir / "run.ini").string() + "\" --threads " +
                              std::to_string(threads) + " --out \"" + out.string() + "\" pipeline run > /dev/null";
      if (std::system(cmd.c_str()) != 0) return {false, "pipeline run failed: " + cmd};
      csvs.push_back(slurp(out / "nbv.csv"));
    }
  bool same = !csvs[0].empty();
  for (const auto& c : csvs) same = same && c == csvs[0];
  fs::remove_all(dir);
  return {same, fmt("4 runs (threads 1 and 4, twice each), %.0f CSV bytes, identical %.0f", double(csvs[0].size()), same)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"view sweep", view_sweep},
      {"metric identities", metric_identities},
      {"voxelization", voxelization},
      {"NBV direction", nbv_direction},
      {"noisy odometry trend", noise_trend},
      {"PCA correctness", pca},
      {"trajectory replay", replay_and_planner},
      {"dead reckoning constants", minecraft},
      {"memory math", memory_math},
      {"mesh pipeline", mesh_pipeline},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
