#include "covision/covision.h"

#include <cstdio>
#include <memory>
#include <new>
#include <string>
#include <thread>
#include <vector>

#include "anno/anno_service.hpp"
#include "anno/http_server.hpp"
#include "baseline/matcher.hpp"
#include "common/error.hpp"
#include "graph/covis_graph.hpp"
#include "scenegen/scene_gen.hpp"
#include "store/binary_io.hpp"
#include "store/graph_file.hpp"
#include "store/scenario_store.hpp"
#include "topo/topologies.hpp"

struct cv_scene {
  covision::BoxScene scene;
};

struct cv_scenario {
  covision::Scenario scenario;
};

struct cv_graph {
  covision::CovisGraph graph;
};

struct cv_server {
  std::unique_ptr<covision::AnnoService> service;
  std::unique_ptr<covision::HttpServer> http;
};

namespace {

thread_local std::string g_last_error;

cv_status status_of(covision::ErrorKind kind) {
  using covision::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidInput: return CV_ERR_INVALID_INPUT;
    case ErrorKind::InvalidPose: return CV_ERR_INVALID_POSE;
    case ErrorKind::ExhaustedRegion: return CV_ERR_EXHAUSTED_REGION;
    case ErrorKind::PartialScenario: return CV_ERR_PARTIAL_SCENARIO;
    case ErrorKind::Io: return CV_ERR_IO;
    case ErrorKind::Format: return CV_ERR_FORMAT;
    case ErrorKind::MissingFile: return CV_ERR_MISSING_FILE;
    case ErrorKind::Version: return CV_ERR_VERSION;
    case ErrorKind::NotFound: return CV_ERR_NOT_FOUND;
  }
  return CV_ERR_INTERNAL;
}

template <typename F>
cv_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return CV_OK;
  } catch (const covision::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return CV_ERR_INTERNAL;
}

void need(const void* p, const char* name) {
  covision::require(p != nullptr, std::string(name) + " must not be null");
}

cv_graph* wrap(covision::CovisGraph g) { return new cv_graph{std::move(g)}; }

covision::Adjacency pred_adjacency(const covision::CovisGraph& pred, const double* tau) {
  return covision::resolve_adjacency(pred, tau);
}

covision::Adjacency gt_adjacency(const covision::CovisGraph& gt) { return covision::resolve_adjacency(gt, nullptr); }

}  // namespace

extern "C" {

const char* cv_last_error(void) { return g_last_error.c_str(); }

const char* cv_status_name(cv_status status) {
  switch (status) {
    case CV_OK: return "ok";
    case CV_ERR_INVALID_INPUT: return "invalid-input";
    case CV_ERR_INVALID_POSE: return "invalid-pose";
    case CV_ERR_EXHAUSTED_REGION: return "exhausted-region";
    case CV_ERR_PARTIAL_SCENARIO: return "partial-scenario";
    case CV_ERR_IO: return "io";
    case CV_ERR_FORMAT: return "format";
    case CV_ERR_MISSING_FILE: return "missing-file";
    case CV_ERR_VERSION: return "version";
    case CV_ERR_NOT_FOUND: return "not-found";
    case CV_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

cv_status cv_scene_load(const char* path, cv_scene** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new cv_scene{covision::read_scene(path)};
  });
}

void cv_scene_free(cv_scene* scene) { delete scene; }

void cv_gen_config_default(cv_gen_config* cfg) {
  if (!cfg) return;
  const covision::GenConfig d;
  *cfg = cv_gen_config{d.alpha,
                       d.beta,
                       d.n_candidates,
                       d.prune_radius,
                       d.iou_min,
                       d.iou_max,
                       d.coverage_stop,
                       d.wall_band,
                       d.eye_height,
                       d.coverage_cell,
                       d.region_spacing,
                       d.yaw_jitter_deg,
                       d.resolution,
                       d.tau,
                       d.max_iterations,
                       d.seed,
                       d.intrinsics.width,
                       d.intrinsics.height,
                       d.intrinsics.fx,
                       d.intrinsics.fy,
                       d.intrinsics.cx,
                       d.intrinsics.cy,
                       d.render_images ? 1 : 0,
                       d.jobs};
}

cv_status cv_generate(const cv_scene* scene, const cv_gen_config* cfg, cv_scenario** out) {
  if (out) *out = nullptr;
  try {
    need(scene, "scene");
    need(cfg, "cfg");
    need(out, "out");
    covision::GenConfig c;
    c.alpha = cfg->alpha;
    c.beta = cfg->beta;
    c.n_candidates = cfg->n_candidates;
    c.prune_radius = cfg->prune_radius;
    c.iou_min = cfg->iou_min;
    c.iou_max = cfg->iou_max;
    c.coverage_stop = cfg->coverage_stop;
    c.wall_band = cfg->wall_band;
    c.eye_height = cfg->eye_height;
    c.coverage_cell = cfg->coverage_cell;
    c.region_spacing = cfg->region_spacing;
    c.yaw_jitter_deg = cfg->yaw_jitter_deg;
    c.resolution = cfg->resolution;
    c.tau = cfg->tau;
    c.max_iterations = cfg->max_iterations;
    c.seed = cfg->seed;
    c.intrinsics = {cfg->width, cfg->height, cfg->fx, cfg->fy, cfg->cx, cfg->cy};
    c.render_images = cfg->render_images != 0;
    c.jobs = cfg->jobs;
    *out = new cv_scenario{covision::generate_scenario(scene->scene, c)};
    g_last_error.clear();
    return CV_OK;
  } catch (const covision::PartialScenarioError& e) {
    *out = new cv_scenario{e.partial()};
    g_last_error = e.what();
    return CV_ERR_PARTIAL_SCENARIO;
  } catch (...) {
    return guard([] { throw; });
  }
}

cv_status cv_scenario_save(const cv_scenario* scenario, const char* dir) {
  return guard([&] {
    need(scenario, "scenario");
    need(dir, "dir");
    covision::save_scenario(scenario->scenario, dir);
  });
}

cv_status cv_scenario_load(const char* dir, cv_scenario** out) {
  return guard([&] {
    need(dir, "dir");
    need(out, "out");
    *out = new cv_scenario{covision::load_scenario(dir)};
  });
}

cv_status cv_scenario_import(const char* poses_file, const char* depth_dir, double resolution, double tau, int jobs,
                             cv_scenario** out) {
  return guard([&] {
    need(poses_file, "poses_file");
    need(depth_dir, "depth_dir");
    need(out, "out");
    *out = new cv_scenario{covision::import_external(poses_file, depth_dir, resolution, tau, jobs)};
  });
}

void cv_scenario_free(cv_scenario* scenario) { delete scenario; }

size_t cv_scenario_view_count(const cv_scenario* scenario) {
  return scenario ? scenario->scenario.views.size() : 0;
}

int cv_scenario_coverage(const cv_scenario* scenario, double* out) {
  if (!scenario || !out || !scenario->scenario.coverage) return 0;
  *out = *scenario->scenario.coverage;
  return 1;
}

cv_status cv_scenario_gt_graph(const cv_scenario* scenario, const double* tau, cv_graph** out) {
  return guard([&] {
    need(scenario, "scenario");
    need(out, "out");
    covision::CovisGraph g = scenario->scenario.gt;
    if (tau) {
      g.set_threshold(*tau);
    } else {
      covision::require(g.tau.has_value(), "scenario has no stored tau");
      g.set_threshold(*g.tau);
    }
    *out = wrap(std::move(g));
  });
}

cv_status cv_graph_load(const char* path, cv_graph** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(covision::read_graph(path));
  });
}

cv_status cv_graph_save(const cv_graph* graph, const char* path) {
  return guard([&] {
    need(graph, "graph");
    need(path, "path");
    covision::write_graph(path, graph->graph);
  });
}

void cv_graph_free(cv_graph* graph) { delete graph; }

size_t cv_graph_node_count(const cv_graph* graph) { return graph ? graph->graph.size() : 0; }

int cv_graph_node_id(const cv_graph* graph, size_t index) {
  return graph && index < graph->graph.size() ? graph->graph.ids[index] : -1;
}

double cv_graph_weight(const cv_graph* graph, size_t i, size_t j) {
  if (!graph || i >= graph->graph.size() || j >= graph->graph.size()) return 0.0;
  return graph->graph.weights.at(i, j);
}

long cv_graph_edge_count(const cv_graph* graph) {
  if (!graph || !graph->graph.adjacency) return -1;
  return static_cast<long>(graph->graph.adjacency->edge_count());
}

cv_status cv_graph_iou(const cv_graph* pred, const cv_graph* gt, const double* pred_tau, double* out) {
  return guard([&] {
    need(pred, "pred");
    need(gt, "gt");
    need(out, "out");
    const auto aligned = covision::align_nodes(pred->graph, gt->graph);
    *out = covision::graph_iou(pred_adjacency(aligned, pred_tau), gt_adjacency(gt->graph));
  });
}

cv_status cv_graph_auc(const cv_graph* pred, const cv_graph* gt, int thresholds, double* out) {
  return guard([&] {
    need(pred, "pred");
    need(gt, "gt");
    need(out, "out");
    const auto aligned = covision::align_nodes(pred->graph, gt->graph);
    *out = covision::auc(aligned.weights, gt_adjacency(gt->graph), thresholds);
  });
}

cv_status cv_graph_iou_curve_csv(const cv_graph* pred, const cv_graph* gt, int thresholds, const char* path) {
  return guard([&] {
    need(pred, "pred");
    need(gt, "gt");
    need(path, "path");
    const auto aligned = covision::align_nodes(pred->graph, gt->graph);
    std::string csv = "threshold,iou\n";
    char line[96];
    for (const auto& p : covision::iou_curve(aligned.weights, gt_adjacency(gt->graph), thresholds)) {
      std::snprintf(line, sizeof line, "%.6f,%.6f\n", p.threshold, p.iou);
      csv += line;
    }
    covision::write_file(path, csv);
  });
}

cv_status cv_difficulty_pair(double overlap, cv_difficulty* out) {
  return guard([&] {
    need(out, "out");
    *out = static_cast<cv_difficulty>(covision::difficulty_pair(overlap).level);
  });
}

cv_status cv_difficulty_scene(const double* overlaps, size_t count, cv_difficulty* out) {
  return guard([&] {
    need(out, "out");
    covision::require(count == 0 || overlaps != nullptr, "overlaps must not be null");
    *out = static_cast<cv_difficulty>(covision::difficulty_scene({overlaps, count}).level);
  });
}

const char* cv_difficulty_name(cv_difficulty level) {
  switch (level) {
    case CV_EASY: return "easy";
    case CV_MEDIUM: return "medium";
    case CV_HARD: return "hard";
  }
  return "unknown";
}

void cv_topo_params_default(cv_topo_params* params) {
  if (!params) return;
  *params = cv_topo_params{-1, covision::kDefaultProximity, 0, 0};
}

cv_status cv_topology(const cv_scenario* scenario, const char* kind, const cv_topo_params* params, cv_graph** out) {
  return guard([&] {
    need(scenario, "scenario");
    need(kind, "kind");
    need(out, "out");
    cv_topo_params p;
    cv_topo_params_default(&p);
    if (params) p = *params;

    const auto& s = scenario->scenario;
    const std::size_t n = s.views.size();
    const std::string k = kind;
    covision::Adjacency adj;
    if (k == "star") {
      covision::require(n > 0, "star topology needs at least one view");
      adj = covision::star(n, p.center < 0 ? 0 : s.view_index(p.center));
    } else if (k == "complete") {
      adj = covision::complete(n);
    } else if (k == "random") {
      std::size_t edges = p.edges;
      if (edges == 0) edges = s.gt.adjacency ? s.gt.adjacency->edge_count() : 0;
      adj = covision::random_matched(n, edges, p.seed);
    } else if (k == "proximity") {
      std::vector<covision::Pose> poses;
      for (const auto& v : s.views) poses.push_back(v.pose);
      adj = covision::gt_proximity(poses, p.distance);
    } else if (k == "high-covis") {
      adj = covision::high_covis(s.gt.weights);
    } else {
      covision::fail(covision::ErrorKind::InvalidInput, "unknown topology kind: " + k);
    }
    covision::CovisGraph g(s.gt.ids);
    g.adjacency = std::move(adj);
    *out = wrap(std::move(g));
  });
}

cv_status cv_graph_write_pair_list(const cv_graph* graph, const char* path) {
  return guard([&] {
    need(graph, "graph");
    need(path, "path");
    covision::require(graph->graph.adjacency.has_value(), "graph has no edge list");
    covision::write_file(path, covision::pair_list(*graph->graph.adjacency, graph->graph.ids));
  });
}

cv_status cv_baseline_match(const cv_scenario* scenario, int max_keypoints, uint64_t seed, int jobs, cv_graph** out) {
  return guard([&] {
    need(scenario, "scenario");
    need(out, "out");
    covision::MatchConfig cfg;
    cfg.seed = seed;
    *out = wrap(covision::predict_graph(scenario->scenario, max_keypoints, cfg, jobs));
  });
}

cv_status cv_server_create(const char* data_root, uint64_t seed, const char* static_dir, cv_server** out) {
  return guard([&] {
    need(data_root, "data_root");
    need(out, "out");
    auto server = std::make_unique<cv_server>();
    server->service = std::make_unique<covision::AnnoService>(data_root, seed);
    server->http = std::make_unique<covision::HttpServer>(*server->service,
                                                          static_dir ? std::filesystem::path(static_dir)
                                                                     : std::filesystem::path());
    *out = server.release();
  });
}

cv_status cv_server_bind(cv_server* server, const char* host, int port, int* bound_port) {
  return guard([&] {
    need(server, "server");
    need(host, "host");
    const int bound = server->http->bind(host, port);
    if (bound < 0) covision::fail(covision::ErrorKind::Io, "cannot bind " + std::string(host) + ":" + std::to_string(port));
    if (bound_port) *bound_port = bound;
  });
}

cv_status cv_server_run(cv_server* server) {
  return guard([&] {
    need(server, "server");
    if (!server->http->listen_after_bind()) covision::fail(covision::ErrorKind::Io, "server stopped with an error");
  });
}

void cv_server_stop(cv_server* server) {
  if (server) server->http->stop();
}

void cv_server_free(cv_server* server) {
  if (!server) return;
  server->http.reset();
  delete server;
}

}  // extern "C"
