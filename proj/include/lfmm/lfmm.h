#ifndef LFMM_LFMM_H
#define LFMM_LFMM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LFMM_API __declspec(dllexport)
#else
#define LFMM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lfmm_status {
  LFMM_OK = 0,
  LFMM_INVALID_ARGUMENT = 1,
  LFMM_PARSE = 2,
  LFMM_IO = 3,
  LFMM_CONFIG = 4,
  LFMM_MALFORMED_HEADER = 5,
  LFMM_RLE_OVERRUN = 6,
  LFMM_EMPTY_VIEW = 7,
  LFMM_NO_PLANE_FOUND = 8,
  LFMM_DEGENERATE_HULL = 9,
  LFMM_EMPTY_COMPLETION = 10,
  LFMM_DEGENERATE_SET = 11,
  LFMM_NEAR_VERTICAL = 12,
  LFMM_NO_PATH = 13,
  LFMM_EMPTY_MEMORY = 14,
  LFMM_NEAR_ZERO_NORMALIZER = 15,
  LFMM_FRAME_MISMATCH = 16,
  LFMM_EMPTY_MESH = 17,
  LFMM_NO_SUCCESSES = 18,
  LFMM_INTERNAL = 99
} lfmm_status;

/* Message of the last failure on the calling thread ("" if none). */
LFMM_API const char* lfmm_last_error(void);
LFMM_API const char* lfmm_status_name(lfmm_status status);
LFMM_API const char* lfmm_version(void);

/* Buffers and strings returned by the library are released with this. */
LFMM_API void lfmm_free(void* p);

typedef struct lfmm_grid lfmm_grid;
typedef struct lfmm_mesh lfmm_mesh;
typedef struct lfmm_map lfmm_map;
typedef struct lfmm_report lfmm_report;

/* ---- grids ---- */

/* binvox or score files, detected from the header */
LFMM_API lfmm_status lfmm_grid_load(const char* path, lfmm_grid** out);
/* binary != 0 thresholds at 0.5 and writes binvox; otherwise writes scores */
LFMM_API lfmm_status lfmm_grid_save(const lfmm_grid* grid, const char* path, int binary);
LFMM_API void lfmm_grid_free(lfmm_grid* grid);
LFMM_API int lfmm_grid_dim(const lfmm_grid* grid);
LFMM_API double lfmm_grid_voxel_size(const lfmm_grid* grid);
LFMM_API size_t lfmm_grid_occupied(const lfmm_grid* grid);
LFMM_API lfmm_status lfmm_grid_jaccard(const lfmm_grid* a, const lfmm_grid* b, double* out);

/* Relative pose is a row-major 4x4 taking previous-camera coordinates to
   current-camera coordinates. `previous` and `relative_pose` may be NULL.
   "oracle" needs `ground_truth` in the current view's frame and scores the
   hidden side 0.5 +- uniform(0, band_width); band_width <= 0 uses 0.025. */
typedef struct lfmm_completion_args {
  const char* method; /* "partial", "hull", "registered", "oracle" */
  const lfmm_grid* current;
  const lfmm_grid* previous;
  const double* relative_pose;
  double odometry_noise;
  uint64_t seed;
  const lfmm_grid* ground_truth;
  double band_width;
} lfmm_completion_args;

LFMM_API lfmm_status lfmm_complete(const lfmm_completion_args* args, lfmm_grid** out);

/* ---- meshes ---- */

LFMM_API lfmm_status lfmm_mesh_load(const char* path, lfmm_mesh** out);
/* primitive spec such as "box:0.2,0.1,0.1" or "sphere:0.1" */
LFMM_API lfmm_status lfmm_mesh_primitive(const char* spec, lfmm_mesh** out);
LFMM_API lfmm_status lfmm_mesh_save(const lfmm_mesh* mesh, const char* path);
LFMM_API void lfmm_mesh_free(lfmm_mesh* mesh);
LFMM_API size_t lfmm_mesh_triangles(const lfmm_mesh* mesh);

/* Marching-cubes surface of a completion; `observed` may be NULL. */
LFMM_API lfmm_status lfmm_reconstruct(const lfmm_grid* completion, const lfmm_grid* observed,
                                      int smoothing_iters, lfmm_mesh** out);
/* symmetric, millimetres */
LFMM_API lfmm_status lfmm_hausdorff(const lfmm_mesh* a, const lfmm_mesh* b, size_t samples, uint64_t seed,
                                    double* out);

/* ---- next best view ---- */

typedef struct lfmm_nbv_args {
  const lfmm_grid* scores;
  double center;   /* band center, 0.5 */
  double epsilon;  /* band half width, 0.025 */
  double standoff; /* 0.5 m */
  double min_height, max_height;
  /* Row-major 4x4 world-from-camera pose of the grid's camera; NULL uses
     the camera frame as the world frame. */
  const double* world_from_camera;
} lfmm_nbv_args;

typedef struct lfmm_nbv_result {
  double direction[3]; /* unit, world frame */
  double object_centroid[3];
  double camera_position[3];
  double torso_height;
  double head_angle; /* radians */
  size_t band_voxels;
} lfmm_nbv_result;

LFMM_API lfmm_status lfmm_nbv_plan(const lfmm_nbv_args* args, lfmm_nbv_result* out);

/* ---- navigation ---- */

typedef struct lfmm_robot {
  double width, depth, height, floor_clearance;
} lfmm_robot;

/* bounds = {min_x, min_y, max_x, max_y} or NULL for the mesh extent */
LFMM_API lfmm_status lfmm_map_build(const lfmm_mesh* env, const lfmm_robot* robot, double cell,
                                    const double* bounds, lfmm_map** out);
/* PGM plus a "<path>.meta" sidecar */
LFMM_API lfmm_status lfmm_map_save(const lfmm_map* map, const char* path);
LFMM_API lfmm_status lfmm_map_load(const char* path, lfmm_map** out);
LFMM_API void lfmm_map_free(lfmm_map* map);
LFMM_API void lfmm_map_info(const lfmm_map* map, int* width, int* height, double* cell, size_t* blocked);

/* Waypoints come back as n triples (x, y, yaw). */
LFMM_API lfmm_status lfmm_plan_path(const lfmm_map* map, const double start[2], const double goal[2],
                                    double** waypoints, size_t* n, double* length);
/* Command text, one of FORWARD/LEFT/RIGHT per line, ending with DONE. */
LFMM_API lfmm_status lfmm_discretize(const double* waypoints, size_t n, char** commands);
/* Replays commands from `start` (x, y, yaw); poses come back as triples. */
LFMM_API lfmm_status lfmm_dead_reckon(const char* commands, double step, double turn, const double start[3],
                                      double noise, uint64_t seed, double** poses, size_t* n);

/* ---- experiments ---- */

/* Either path or text may be set; both NULL gives the defaults. Overrides
   apply when set (seed_set != 0, threads > 0, non-NULL strings). */
typedef struct lfmm_run_args {
  const char* config_path;
  const char* config_text;
  const char* kind;
  uint64_t seed;
  int seed_set;
  int threads;
  const char* out_dir;
  int trials;
  const char* nav_map; /* occupancy map for navigation runs */
} lfmm_run_args;

LFMM_API lfmm_status lfmm_run_experiment(const lfmm_run_args* args, lfmm_report** out);
/* format: "csv" or "json"; NULL dir means the configured output dir */
LFMM_API lfmm_status lfmm_report_write(const lfmm_report* report, const char* format, const char* dir,
                                       char** main_path);
/* CSV text of the report, CRLF line endings */
LFMM_API lfmm_status lfmm_report_csv(const lfmm_report* report, char** out);
LFMM_API size_t lfmm_report_rows(const lfmm_report* report);
LFMM_API size_t lfmm_report_failed(const lfmm_report* report);
LFMM_API const char* lfmm_report_output_dir(const lfmm_report* report);
LFMM_API const char* lfmm_report_format(const lfmm_report* report);
/* LFMM_INVALID_ARGUMENT when the key is absent */
LFMM_API lfmm_status lfmm_report_summary(const lfmm_report* report, const char* key, double* out);
LFMM_API size_t lfmm_report_summary_count(const lfmm_report* report);
LFMM_API const char* lfmm_report_summary_key(const lfmm_report* report, size_t i);
LFMM_API void lfmm_report_free(lfmm_report* report);

typedef struct lfmm_memory_bench_args {
  int key_dim, value_dim, length, trials;
  const int* feature_counts;
  size_t n_feature_counts;
  uint64_t seed;
} lfmm_memory_bench_args;

LFMM_API lfmm_status lfmm_memory_bench(const lfmm_memory_bench_args* args, lfmm_report** out);

typedef struct lfmm_dataset_args {
  lfmm_run_args run;
  int max_views;
  int carved;
} lfmm_dataset_args;

LFMM_API lfmm_status lfmm_dataset_generate(const lfmm_dataset_args* args, size_t* views, size_t* empty_views);

LFMM_API lfmm_status lfmm_view_count(double stride, size_t* out);

#ifdef __cplusplus
}
#endif

#endif
