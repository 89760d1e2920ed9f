#include "lfmm/lfmm.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path p = fs::temp_directory_path() / "lfmm_capi" / (std::string(info->test_suite_name()) + "_" + info->name());
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// One ellipsoid view written through the dataset generator.
fs::path make_views(const fs::path& dir) {
  lfmm_dataset_args a{};
  a.run.config_text = "[objects]\nprimitives = ellipsoid:0.08,0.06,0.05\n";
  const std::string out = (dir / "ds").string();
  a.run.out_dir = out.c_str();
  a.max_views = 2;
  size_t views = 0, empty = 0;
  EXPECT_EQ(lfmm_dataset_generate(&a, &views, &empty), LFMM_OK) << lfmm_last_error();
  EXPECT_EQ(views, 2u);
  return dir / "ds" / "ellipsoid_0.08_0.06_0.05";
}

const double kIdentity[16] = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

}  // namespace

TEST(Capi, StatusAndErrors) {
  EXPECT_STREQ(lfmm_status_name(LFMM_OK), "ok");
  EXPECT_STREQ(lfmm_status_name(static_cast<lfmm_status>(42)), "unknown");
  EXPECT_STREQ(lfmm_status_name(LFMM_NO_PATH), "NoPath");
  EXPECT_GT(std::strlen(lfmm_version()), 0u);
  lfmm_grid* g = nullptr;
  EXPECT_EQ(lfmm_grid_load("/nonexistent.binvox", &g), LFMM_IO);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::string(lfmm_last_error()).find("nonexistent"), std::string::npos);
  EXPECT_EQ(lfmm_grid_load(nullptr, &g), LFMM_INVALID_ARGUMENT);
  size_t n = 0;
  EXPECT_EQ(lfmm_view_count(0.6, &n), LFMM_OK);
  EXPECT_EQ(n, 726u);
  EXPECT_EQ(lfmm_view_count(-1.0, &n), LFMM_INVALID_ARGUMENT);
}

TEST(Capi, GridsCompletionAndMeshes) {
  const auto dir = scratch();
  const auto views = make_views(dir);
  lfmm_grid *cur = nullptr, *prev = nullptr, *gt = nullptr;
  ASSERT_EQ(lfmm_grid_load((views / "0000_partial.binvox").c_str(), &cur), LFMM_OK);
  ASSERT_EQ(lfmm_grid_load((views / "0001_partial.binvox").c_str(), &prev), LFMM_OK);
  ASSERT_EQ(lfmm_grid_load((views / "0000_gt.binvox").c_str(), &gt), LFMM_OK);
  EXPECT_EQ(lfmm_grid_dim(cur), 40);
  EXPECT_NEAR(lfmm_grid_voxel_size(cur), 0.3 / 38, 1e-12);
  EXPECT_GT(lfmm_grid_occupied(cur), 0u);

  lfmm_completion_args a{};
  a.method = "hull";
  a.current = cur;
  lfmm_grid* hull = nullptr;
  ASSERT_EQ(lfmm_complete(&a, &hull), LFMM_OK) << lfmm_last_error();
  double j_partial = 0, j_hull = 0;
  ASSERT_EQ(lfmm_grid_jaccard(cur, gt, &j_partial), LFMM_OK);
  ASSERT_EQ(lfmm_grid_jaccard(hull, gt, &j_hull), LFMM_OK);
  EXPECT_GT(j_hull, j_partial);

  a.method = "registered";
  a.previous = prev;
  lfmm_grid* reg = nullptr;
  EXPECT_EQ(lfmm_complete(&a, &reg), LFMM_INVALID_ARGUMENT);
  const double not_rotation[16] = {2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
  a.relative_pose = not_rotation;
  EXPECT_EQ(lfmm_complete(&a, &reg), LFMM_INVALID_ARGUMENT);
  a.relative_pose = kIdentity;
  ASSERT_EQ(lfmm_complete(&a, &reg), LFMM_OK);
  EXPECT_GE(lfmm_grid_occupied(reg), lfmm_grid_occupied(cur));
  lfmm_grid_free(reg);

  a.method = "cnn";
  EXPECT_EQ(lfmm_complete(&a, &reg), LFMM_CONFIG);

  // Score files keep fractional values; binvox thresholds them.
  a.method = "oracle";
  a.previous = nullptr;
  a.relative_pose = nullptr;
  a.ground_truth = gt;
  lfmm_grid* oracle = nullptr;
  ASSERT_EQ(lfmm_complete(&a, &oracle), LFMM_OK);
  const std::string sp = (dir / "o.scores").string(), bp = (dir / "o.binvox").string();
  ASSERT_EQ(lfmm_grid_save(oracle, sp.c_str(), 0), LFMM_OK);
  ASSERT_EQ(lfmm_grid_save(oracle, bp.c_str(), 1), LFMM_OK);
  lfmm_grid *s2 = nullptr, *b2 = nullptr;
  ASSERT_EQ(lfmm_grid_load(sp.c_str(), &s2), LFMM_OK);
  ASSERT_EQ(lfmm_grid_load(bp.c_str(), &b2), LFMM_OK);
  double j = 0;
  ASSERT_EQ(lfmm_grid_jaccard(s2, b2, &j), LFMM_OK);
  EXPECT_EQ(j, 1.0);

  lfmm_nbv_args na{oracle, 0.5, 0.025, 0.5, 0.1, 1.1, nullptr};
  lfmm_nbv_result r{};
  ASSERT_EQ(lfmm_nbv_plan(&na, &r), LFMM_OK) << lfmm_last_error();
  EXPECT_NEAR(std::sqrt(r.direction[0] * r.direction[0] + r.direction[1] * r.direction[1] +
                        r.direction[2] * r.direction[2]),
              1.0, 1e-9);
  EXPECT_GT(r.band_voxels, 2u);
  na.scores = cur;
  EXPECT_EQ(lfmm_nbv_plan(&na, &r), LFMM_DEGENERATE_SET);

  lfmm_mesh* m = nullptr;
  ASSERT_EQ(lfmm_reconstruct(hull, cur, 0, &m), LFMM_OK);
  EXPECT_GT(lfmm_mesh_triangles(m), 0u);
  const std::string mp = (dir / "m.off").string();
  ASSERT_EQ(lfmm_mesh_save(m, mp.c_str()), LFMM_OK);
  lfmm_mesh* back = nullptr;
  ASSERT_EQ(lfmm_mesh_load(mp.c_str(), &back), LFMM_OK);
  double h = -1;
  ASSERT_EQ(lfmm_hausdorff(m, back, 2000, 1, &h), LFMM_OK);
  EXPECT_LT(h, 1e-3);

  for (lfmm_grid* g : {cur, prev, gt, hull, oracle, s2, b2}) lfmm_grid_free(g);
  lfmm_mesh_free(m);
  lfmm_mesh_free(back);
}

TEST(Capi, NavigationChain) {
  const auto dir = scratch();
  lfmm_mesh* pillar = nullptr;
  ASSERT_EQ(lfmm_mesh_primitive("box:0.4,0.4,1", &pillar), LFMM_OK);
  const lfmm_robot robot{0.6, 0.6, 1.6, 0.05};
  const double bounds[4] = {-2, -2, 2, 2};
  lfmm_map* map = nullptr;
  ASSERT_EQ(lfmm_map_build(pillar, &robot, 0.05, bounds, &map), LFMM_OK) << lfmm_last_error();
  int w = 0, hgt = 0;
  double cell = 0;
  size_t blocked = 0;
  lfmm_map_info(map, &w, &hgt, &cell, &blocked);
  EXPECT_EQ(w, 80);
  EXPECT_EQ(hgt, 80);
  EXPECT_EQ(cell, 0.05);
  EXPECT_EQ(blocked, 20u * 20u);  // (0.2 + 0.3) * 2 / 0.05 on a side

  const std::string mp = (dir / "m.pgm").string();
  ASSERT_EQ(lfmm_map_save(map, mp.c_str()), LFMM_OK);
  lfmm_map* loaded = nullptr;
  ASSERT_EQ(lfmm_map_load(mp.c_str(), &loaded), LFMM_OK);

  const double start[2] = {-1.5, -1.5}, goal[2] = {1.5, 1.5}, inside[2] = {0, 0};
  double* wp = nullptr;
  size_t n = 0;
  double length = 0;
  ASSERT_EQ(lfmm_plan_path(loaded, start, goal, &wp, &n, &length), LFMM_OK);
  EXPECT_GE(length, std::hypot(3.0, 3.0));
  EXPECT_EQ(lfmm_plan_path(loaded, start, inside, &wp, &n, &length), LFMM_NO_PATH);

  char* cmds = nullptr;
  ASSERT_EQ(lfmm_discretize(wp, n, &cmds), LFMM_OK);
  const std::string text(cmds);
  EXPECT_EQ(text.substr(text.size() - 5), "DONE\n");
  double* poses = nullptr;
  size_t np = 0;
  const double s3[3] = {wp[0], wp[1], wp[2]};
  ASSERT_EQ(lfmm_dead_reckon(cmds, 0.1, 10.0 * M_PI / 180.0, s3, 0.0, 0, &poses, &np), LFMM_OK);
  EXPECT_LE(std::hypot(poses[3 * (np - 1)] - wp[3 * (n - 1)], poses[3 * (np - 1) + 1] - wp[3 * (n - 1) + 1]), 0.15);
  EXPECT_EQ(lfmm_dead_reckon("FORWARD\nJUMP\nDONE\n", 0.1, 0.1, s3, 0.0, 0, &poses, &np), LFMM_PARSE);

  lfmm_free(wp);
  lfmm_free(cmds);
  lfmm_free(poses);
  lfmm_map_free(map);
  lfmm_map_free(loaded);
  lfmm_mesh_free(pillar);
}

TEST(Capi, ExperimentsAndReports) {
  const auto dir = scratch();
  lfmm_run_args a{};
  a.config_text = "[experiment]\nkind = nav\n[nav]\nobstacles = 1\n";
  a.trials = 3;
  a.seed = 5;
  a.seed_set = 1;
  const std::string out = dir.string();
  a.out_dir = out.c_str();
  lfmm_report* r = nullptr;
  ASSERT_EQ(lfmm_run_experiment(&a, &r), LFMM_OK) << lfmm_last_error();
  EXPECT_EQ(lfmm_report_rows(r), 3u);
  EXPECT_EQ(lfmm_report_failed(r), 0u);
  EXPECT_STREQ(lfmm_report_format(r), "csv");
  double spl = -1, sr = -1;
  ASSERT_EQ(lfmm_report_summary(r, "spl", &spl), LFMM_OK);
  ASSERT_EQ(lfmm_report_summary(r, "success_rate", &sr), LFMM_OK);
  EXPECT_LE(spl, sr);
  EXPECT_EQ(lfmm_report_summary(r, "nope", &spl), LFMM_INVALID_ARGUMENT);
  bool found = false;
  for (size_t i = 0; i < lfmm_report_summary_count(r); ++i) found = found || std::string(lfmm_report_summary_key(r, i)) == "spl";
  EXPECT_TRUE(found);

  char* csv = nullptr;
  ASSERT_EQ(lfmm_report_csv(r, &csv), LFMM_OK);
  char* path = nullptr;
  ASSERT_EQ(lfmm_report_write(r, "csv", nullptr, &path), LFMM_OK);
  std::ifstream f(path, std::ios::binary);
  EXPECT_EQ(std::string((std::istreambuf_iterator<char>(f)), {}), std::string(csv));
  EXPECT_EQ(fs::path(path).parent_path(), dir);
  EXPECT_EQ(lfmm_report_write(r, "xml", nullptr, &path), LFMM_CONFIG);

  // Same seed on more threads: same bytes.
  lfmm_report* r2 = nullptr;
  a.threads = 3;
  ASSERT_EQ(lfmm_run_experiment(&a, &r2), LFMM_OK);
  char* csv2 = nullptr;
  ASSERT_EQ(lfmm_report_csv(r2, &csv2), LFMM_OK);
  EXPECT_STREQ(csv, csv2);

  a.config_text = "[experiment]\nbogus = 1\n";
  lfmm_report* bad = nullptr;
  EXPECT_EQ(lfmm_run_experiment(&a, &bad), LFMM_CONFIG);
  a.config_path = "/nonexistent.ini";
  EXPECT_EQ(lfmm_run_experiment(&a, &bad), LFMM_INVALID_ARGUMENT);  // path and text together
  a.config_text = nullptr;
  EXPECT_EQ(lfmm_run_experiment(&a, &bad), LFMM_CONFIG);

  lfmm_free(csv);
  lfmm_free(csv2);
  lfmm_free(path);
  lfmm_report_free(r);
  lfmm_report_free(r2);
}

TEST(Capi, MemoryBench) {
  const int counts[2] = {16, 256};
  lfmm_memory_bench_args a{64, 64, 32, 20, counts, 2, 1};
  lfmm_report* r = nullptr;
  ASSERT_EQ(lfmm_memory_bench(&a, &r), LFMM_OK);
  EXPECT_EQ(lfmm_report_rows(r), 2u);
  char* csv = nullptr;
  ASSERT_EQ(lfmm_report_csv(r, &csv), LFMM_OK);
  EXPECT_EQ(std::string(csv).rfind("trial,m,median_rel_error,mean_rel_error,error\r\n", 0), 0u);
  lfmm_free(csv);
  lfmm_report_free(r);
  a.n_feature_counts = 0;
  EXPECT_EQ(lfmm_memory_bench(&a, &r), LFMM_INVALID_ARGUMENT);
}
