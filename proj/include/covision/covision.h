#ifndef COVISION_COVISION_H
#define COVISION_COVISION_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef COVISION_BUILDING
#    define COVISION_API __declspec(dllexport)
#  else
#    define COVISION_API __declspec(dllimport)
#  endif
#else
#  define COVISION_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cv_status {
  CV_OK = 0,
  CV_ERR_INVALID_INPUT = 1,
  CV_ERR_INVALID_POSE = 2,
  CV_ERR_EXHAUSTED_REGION = 3,
  CV_ERR_PARTIAL_SCENARIO = 4,
  CV_ERR_IO = 5,
  CV_ERR_FORMAT = 6,
  CV_ERR_MISSING_FILE = 7,
  CV_ERR_VERSION = 8,
  CV_ERR_NOT_FOUND = 9,
  CV_ERR_INTERNAL = 10
} cv_status;

typedef enum cv_difficulty { CV_EASY = 0, CV_MEDIUM = 1, CV_HARD = 2 } cv_difficulty;

typedef struct cv_scene cv_scene;
typedef struct cv_scenario cv_scenario;
typedef struct cv_graph cv_graph;
typedef struct cv_server cv_server;

/* Message of the last failure on the calling thread; "" after success. */
COVISION_API const char* cv_last_error(void);
COVISION_API const char* cv_status_name(cv_status status);

/* ---- scenes ---- */

COVISION_API cv_status cv_scene_load(const char* path, cv_scene** out);
COVISION_API void cv_scene_free(cv_scene* scene);

/* ---- generation ---- */

typedef struct cv_gen_config {
  double alpha;
  double beta;
  int n_candidates;
  double prune_radius;
  double iou_min;
  double iou_max;
  double coverage_stop;
  double wall_band;
  double eye_height;
  double coverage_cell;
  double region_spacing;
  double yaw_jitter_deg;
  double resolution;
  double tau;
  int max_iterations;
  uint64_t seed;
  int width;
  int height;
  double fx;
  double fy;
  double cx;
  double cy;
  int render_images;
  int jobs;
} cv_gen_config;

COVISION_API void cv_gen_config_default(cv_gen_config* cfg);

/* On CV_ERR_PARTIAL_SCENARIO, *out still receives the partial scenario. */
COVISION_API cv_status cv_generate(const cv_scene* scene, const cv_gen_config* cfg, cv_scenario** out);

/* ---- scenarios ---- */

COVISION_API cv_status cv_scenario_save(const cv_scenario* scenario, const char* dir);
COVISION_API cv_status cv_scenario_load(const char* dir, cv_scenario** out);
COVISION_API cv_status cv_scenario_import(const char* poses_file, const char* depth_dir, double resolution,
                                          double tau, int jobs, cv_scenario** out);
COVISION_API void cv_scenario_free(cv_scenario* scenario);

COVISION_API size_t cv_scenario_view_count(const cv_scenario* scenario);
/* Returns 0 and leaves *out untouched when the scenario carries no coverage. */
COVISION_API int cv_scenario_coverage(const cv_scenario* scenario, double* out);

/* Ground-truth graph binarized at *tau, or at the stored tau when tau is NULL. */
COVISION_API cv_status cv_scenario_gt_graph(const cv_scenario* scenario, const double* tau, cv_graph** out);

/* ---- graphs ---- */

COVISION_API cv_status cv_graph_load(const char* path, cv_graph** out);
COVISION_API cv_status cv_graph_save(const cv_graph* graph, const char* path);
COVISION_API void cv_graph_free(cv_graph* graph);

COVISION_API size_t cv_graph_node_count(const cv_graph* graph);
COVISION_API int cv_graph_node_id(const cv_graph* graph, size_t index);
COVISION_API double cv_graph_weight(const cv_graph* graph, size_t i, size_t j);
/* Unordered edge count, or -1 without an adjacency. */
COVISION_API long cv_graph_edge_count(const cv_graph* graph);

/* Graph IoU. The prediction's edges come from its edge list, else from its
 * weights at *pred_tau, else at its own tau. Node sets must match. */
COVISION_API cv_status cv_graph_iou(const cv_graph* pred, const cv_graph* gt, const double* pred_tau, double* out);
COVISION_API cv_status cv_graph_auc(const cv_graph* pred, const cv_graph* gt, int thresholds, double* out);
/* Writes "threshold,iou" lines with a header. */
COVISION_API cv_status cv_graph_iou_curve_csv(const cv_graph* pred, const cv_graph* gt, int thresholds,
                                              const char* path);

COVISION_API cv_status cv_difficulty_pair(double overlap, cv_difficulty* out);
COVISION_API cv_status cv_difficulty_scene(const double* overlaps, size_t count, cv_difficulty* out);
COVISION_API const char* cv_difficulty_name(cv_difficulty level);

/* ---- topologies ---- */

typedef struct cv_topo_params {
  int center;        /* node id for "star" */
  double distance;   /* meters for "proximity" */
  size_t edges;      /* edge count for "random"; 0 means the ground-truth edge count */
  uint64_t seed;
} cv_topo_params;

COVISION_API void cv_topo_params_default(cv_topo_params* params);

/* kind: "star", "complete", "random", "proximity" or "high-covis". */
COVISION_API cv_status cv_topology(const cv_scenario* scenario, const char* kind, const cv_topo_params* params,
                                   cv_graph** out);
COVISION_API cv_status cv_graph_write_pair_list(const cv_graph* graph, const char* path);

/* ---- matching baseline ---- */

COVISION_API cv_status cv_baseline_match(const cv_scenario* scenario, int max_keypoints, uint64_t seed, int jobs,
                                         cv_graph** out);

/* ---- annotation service ---- */

/* static_dir may be NULL. */
COVISION_API cv_status cv_server_create(const char* data_root, uint64_t seed, const char* static_dir,
                                        cv_server** out);
/* port 0 picks a free port; *bound_port receives the result. */
COVISION_API cv_status cv_server_bind(cv_server* server, const char* host, int port, int* bound_port);
/* Blocks until cv_server_stop is called from another thread. */
COVISION_API cv_status cv_server_run(cv_server* server);
COVISION_API void cv_server_stop(cv_server* server);
COVISION_API void cv_server_free(cv_server* server);

#ifdef __cplusplus
}
#endif

#endif
