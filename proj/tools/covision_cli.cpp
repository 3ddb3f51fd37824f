// covision command-line tool. Uses only the public C API.

#include <covision/covision.h>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct DataError {
  cv_status status;
  std::string message;
};

void check(cv_status status) {
  if (status != CV_OK) throw DataError{status, cv_last_error()};
}

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

using Scenario = Handle<cv_scenario, cv_scenario_free>;
using Graph = Handle<cv_graph, cv_graph_free>;
using Scene = Handle<cv_scene, cv_scene_free>;
using Server = Handle<cv_server, cv_server_free>;

void print_metric(double v) { std::printf("%.6f\n", v); }

cv_server* g_server = nullptr;

void on_signal(int) {
  if (g_server) cv_server_stop(g_server);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covision: co-visibility scenario generation and graph evaluation"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.fallthrough();
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a scenario from a box scene");
  std::string scene_path, out_dir;
  cv_gen_config cfg;
  cv_gen_config_default(&cfg);
  bool no_images = false;
  gen->add_option("--scene", scene_path, "Scene JSON file")->required();
  gen->add_option("--seed", cfg.seed, "Random seed")->required();
  gen->add_option("--out", out_dir, "Output scenario directory")->required();
  gen->add_option("--alpha", cfg.alpha, "Weight on newly covered cells")->capture_default_str();
  gen->add_option("--beta", cfg.beta, "Weight on already covered cells")->capture_default_str();
  gen->add_option("--candidates", cfg.n_candidates, "Candidates per iteration")->capture_default_str();
  gen->add_option("--prune-radius", cfg.prune_radius, "Pruning radius in meters")->capture_default_str();
  gen->add_option("--iou-min", cfg.iou_min)->capture_default_str();
  gen->add_option("--iou-max", cfg.iou_max)->capture_default_str();
  gen->add_option("--coverage-stop", cfg.coverage_stop)->capture_default_str();
  gen->add_option("--max-iterations", cfg.max_iterations)->capture_default_str();
  gen->add_option("--resolution", cfg.resolution, "Voxel size in meters")->capture_default_str();
  gen->add_option("--tau", cfg.tau, "Binarization threshold for the stored graph")->capture_default_str();
  gen->add_option("--width", cfg.width)->capture_default_str();
  gen->add_option("--height", cfg.height)->capture_default_str();
  gen->add_option("--fx", cfg.fx)->capture_default_str();
  gen->add_option("--fy", cfg.fy)->capture_default_str();
  gen->add_option("--cx", cfg.cx)->capture_default_str();
  gen->add_option("--cy", cfg.cy)->capture_default_str();
  gen->add_flag("--no-images", no_images, "Skip rendering shaded images");

  // graph
  auto* graph = app.add_subcommand("graph", "Write the ground-truth graph binarized at tau");
  std::string scenario_dir, graph_out;
  double tau = 0.0;
  graph->add_option("--scenario", scenario_dir)->required();
  graph->add_option("--tau", tau)->required();
  graph->add_option("--out", graph_out, "Output graph file")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Print the graph IoU of a prediction");
  std::string pred_path, gt_path;
  double pred_tau = 0.0;
  eval->add_option("--pred", pred_path)->required();
  eval->add_option("--gt", gt_path)->required();
  auto* pred_tau_opt = eval->add_option("--tau", pred_tau, "Binarize prediction weights at this threshold");

  // auc
  auto* auc = app.add_subcommand("auc", "Print the area under the IoU-threshold curve");
  int thresholds = 101;
  std::string curve_path;
  auc->add_option("--pred", pred_path)->required();
  auc->add_option("--gt", gt_path)->required();
  auc->add_option("--thresholds", thresholds)->capture_default_str();
  auc->add_option("--curve", curve_path, "Also write threshold,iou CSV");

  // bucket
  auto* bucket = app.add_subcommand("bucket", "Print pair and scene difficulty labels");
  bucket->add_option("--scenario", scenario_dir)->required();

  // topo
  auto* topo = app.add_subcommand("topo", "Write a pairing topology and its pair list");
  std::string kind, pairs_out;
  cv_topo_params topo_params;
  cv_topo_params_default(&topo_params);
  topo->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"star", "complete", "random", "proximity", "high-covis"}));
  topo->add_option("--scenario", scenario_dir)->required();
  topo->add_option("--out", graph_out, "Output graph file")->required();
  topo->add_option("--pairs", pairs_out, "Pair list file (default: graph path with .txt)");
  topo->add_option("--center", topo_params.center, "Star center view id");
  topo->add_option("--distance", topo_params.distance, "Proximity distance in meters")->capture_default_str();
  topo->add_option("--edges", topo_params.edges, "Random edge count (default: ground-truth edge count)");
  topo->add_option("--seed", topo_params.seed)->capture_default_str();

  // baseline match
  auto* baseline = app.add_subcommand("baseline", "Feature-matching baseline");
  baseline->require_subcommand(1);
  auto* match = baseline->add_subcommand("match", "Predict pair weights by keypoint matching");
  int max_kp = 500;
  std::uint64_t match_seed = 0;
  match->add_option("--scenario", scenario_dir)->required();
  match->add_option("--out", graph_out, "Output graph file")->required();
  match->add_option("--max-kp", max_kp)->capture_default_str();
  match->add_option("--seed", match_seed)->capture_default_str();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  std::string data_root, host = "127.0.0.1", static_dir;
  int port = 8080;
  std::uint64_t serve_seed = 0;
  if (const char* env = std::getenv("COVISION_DATA")) data_root = env;
  serve->add_option("--data", data_root, "Data root (default: $COVISION_DATA)");
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--seed", serve_seed)->capture_default_str();
  serve->add_option("--static", static_dir, "Directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      Scene scene;
      check(cv_scene_load(scene_path.c_str(), scene.out()));
      cfg.jobs = jobs;
      cfg.render_images = no_images ? 0 : 1;
      Scenario s;
      const cv_status st = cv_generate(scene.get(), &cfg, s.out());
      if (st == CV_ERR_PARTIAL_SCENARIO) {
        const std::string message = cv_last_error();
        check(cv_scenario_save(s.get(), out_dir.c_str()));
        std::fprintf(stderr, "partial scenario saved to %s\n", out_dir.c_str());
        throw DataError{st, message};
      }
      check(st);
      check(cv_scenario_save(s.get(), out_dir.c_str()));
      double coverage = 0.0;
      cv_scenario_coverage(s.get(), &coverage);
      std::printf("coverage %.6f\nviews %zu\n", coverage, cv_scenario_view_count(s.get()));
    } else if (*graph) {
      Scenario s;
      check(cv_scenario_load(scenario_dir.c_str(), s.out()));
      Graph g;
      check(cv_scenario_gt_graph(s.get(), &tau, g.out()));
      check(cv_graph_save(g.get(), graph_out.c_str()));
      std::fprintf(stderr, "%zu nodes, %ld edges\n", cv_graph_node_count(g.get()), cv_graph_edge_count(g.get()));
    } else if (*eval) {
      Graph pred, gt;
      check(cv_graph_load(pred_path.c_str(), pred.out()));
      check(cv_graph_load(gt_path.c_str(), gt.out()));
      double iou = 0.0;
      check(cv_graph_iou(pred.get(), gt.get(), *pred_tau_opt ? &pred_tau : nullptr, &iou));
      print_metric(iou);
    } else if (*auc) {
      Graph pred, gt;
      check(cv_graph_load(pred_path.c_str(), pred.out()));
      check(cv_graph_load(gt_path.c_str(), gt.out()));
      double value = 0.0;
      check(cv_graph_auc(pred.get(), gt.get(), thresholds, &value));
      if (!curve_path.empty()) check(cv_graph_iou_curve_csv(pred.get(), gt.get(), thresholds, curve_path.c_str()));
      print_metric(value);
    } else if (*bucket) {
      Scenario s;
      check(cv_scenario_load(scenario_dir.c_str(), s.out()));
      Graph g;
      check(cv_scenario_gt_graph(s.get(), nullptr, g.out()));
      const std::size_t n = cv_graph_node_count(g.get());
      std::vector<double> overlaps;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double w = cv_graph_weight(g.get(), i, j);
          cv_difficulty level;
          check(cv_difficulty_pair(w, &level));
          std::printf("pair %d %d %.6f %s\n", cv_graph_node_id(g.get(), i), cv_graph_node_id(g.get(), j), w,
                      cv_difficulty_name(level));
          overlaps.push_back(w);
        }
      }
      double mean = 0.0;
      for (double w : overlaps) mean += w;
      if (!overlaps.empty()) mean /= static_cast<double>(overlaps.size());
      cv_difficulty level;
      check(cv_difficulty_scene(overlaps.data(), overlaps.size(), &level));
      std::printf("scene %.6f %s\n", mean, cv_difficulty_name(level));
    } else if (*topo) {
      Scenario s;
      check(cv_scenario_load(scenario_dir.c_str(), s.out()));
      Graph g;
      check(cv_topology(s.get(), kind.c_str(), &topo_params, g.out()));
      check(cv_graph_save(g.get(), graph_out.c_str()));
      if (pairs_out.empty()) pairs_out = std::filesystem::path(graph_out).replace_extension(".txt").string();
      check(cv_graph_write_pair_list(g.get(), pairs_out.c_str()));
      std::fprintf(stderr, "%s: %ld edges\n", kind.c_str(), cv_graph_edge_count(g.get()));
    } else if (*match) {
      Scenario s;
      check(cv_scenario_load(scenario_dir.c_str(), s.out()));
      Graph g;
      check(cv_baseline_match(s.get(), max_kp, match_seed, jobs, g.out()));
      check(cv_graph_save(g.get(), graph_out.c_str()));
    } else if (*serve) {
      if (data_root.empty()) {
        std::fprintf(stderr, "serve: --data is required when COVISION_DATA is unset\n%s", serve->help().c_str());
        return kExitUsage;
      }
      Server server;
      check(cv_server_create(data_root.c_str(), serve_seed, static_dir.empty() ? nullptr : static_dir.c_str(),
                             server.out()));
      int bound = 0;
      check(cv_server_bind(server.get(), host.c_str(), port, &bound));
      std::fprintf(stderr, "listening on http://%s:%d\n", host.c_str(), bound);
      g_server = server.get();
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      const cv_status st = cv_server_run(server.get());
      g_server = nullptr;
      check(st);
    }
  } catch (const DataError& e) {
    std::fprintf(stderr, "error (%s): %s\n", cv_status_name(e.status), e.message.c_str());
    return kExitData;
  }
  return 0;
}
