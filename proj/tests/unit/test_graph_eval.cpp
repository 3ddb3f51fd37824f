#include <algorithm>
#include <numeric>
#include <random>

#include "common/error.hpp"
#include "doctest.h"
#include "graph/covis_graph.hpp"
#include "oracles.hpp"

using namespace covision;

namespace {

Adjacency from_edges(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  Adjacency a(n);
  for (auto [i, j] : edges) a.set(i, j);
  return a;
}

WeightMatrix random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WeightMatrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // include exact grid values so strictness matters
      const double x = u(rng);
      w.set(i, j, x < 0.2 ? std::round(x * 500) / 100 : x);
    }
  return w;
}

std::vector<std::vector<double>> dense(const WeightMatrix& w) {
  std::vector<std::vector<double>> out(w.size(), std::vector<double>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) out[i][j] = w.at(i, j);
  return out;
}

}  // namespace

TEST_CASE("binarize is strict and validates tau") {
  WeightMatrix w(3);
  w.set(0, 1, 0.5);
  w.set(1, 2, 0.2);
  const auto a = binarize(w, 0.5);
  CHECK_FALSE(a.edge(0, 1));
  CHECK(binarize(w, 0.0).edge_count() == 2);
  CHECK(binarize(w, 1.0).edge_count() == 0);
  CHECK_THROWS_AS(binarize(w, -0.1), Error);
  CHECK_THROWS_AS(binarize(w, 1.5), Error);
  const auto b = binarize(w, 0.1);
  CHECK(b.edge(2, 1));
  CHECK_FALSE(b.edge(1, 1));
}

TEST_CASE("graph_iou examples") {
  const auto a = from_edges(5, {{1, 2}, {2, 3}});
  const auto b = from_edges(5, {{2, 3}, {3, 4}});
  CHECK(graph_iou(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(std::abs(graph_iou(a, a) - 1.0) < 1e-9);
  CHECK(graph_iou(a, from_edges(5, {{0, 4}})) == 0.0);
  CHECK(graph_iou(Adjacency(5), Adjacency(5)) == 0.0);
  CHECK_THROWS_AS(graph_iou(a, Adjacency(4)), Error);
}

TEST_CASE("graph_iou and auc match brute-force oracles") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto wp = random_weights(n, rng);
    const auto wt = random_weights(n, rng);
    const double tau_p = u(rng), tau_t = u(rng);
    const auto pred = binarize(wp, tau_p);
    const auto truth = binarize(wt, tau_t);
    const auto pe = oracle::edges_above(dense(wp), tau_p);
    const auto te = oracle::edges_above(dense(wt), tau_t);
    CHECK(std::abs(graph_iou(pred, truth) - oracle::edge_set_iou(pe, te)) <= 1e-12);
    CHECK(graph_iou(pred, truth) == graph_iou(truth, pred));
    const int thresholds = 2 + trial % 120;
    CHECK(std::abs(auc(wp, truth, thresholds) - oracle::trapezoid_auc(dense(wp), te, thresholds)) <= 1e-12);
  }
}

TEST_CASE("iou_curve samples evenly spaced thresholds") {
  WeightMatrix w(3);
  w.set(0, 1, 0.3);
  const auto curve = iou_curve(w, from_edges(3, {{0, 1}}), 11);
  REQUIRE(curve.size() == 11);
  CHECK(curve[0].threshold == 0.0);
  CHECK(curve[10].threshold == 1.0);
  CHECK(curve[2].iou == doctest::Approx(1.0));
  CHECK(curve[3].iou == 0.0);  // 0.3 > 0.3 is false
  CHECK_THROWS_AS(iou_curve(w, Adjacency(3), 1), Error);
}

TEST_CASE("perfect binary predictor gives 0.995 at 101 thresholds") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 8;
    auto truth = binarize(random_weights(n, rng), 0.5);
    if (truth.edge_count() == 0) truth.set(0, 1);
    WeightMatrix pred(n);
    for (auto [i, j] : truth.edges()) pred.set(i, j, 1.0);
    CHECK(std::abs(auc(pred, truth) - 0.995) <= 1e-9);
    CHECK(auc(WeightMatrix(n), truth) == 0.0);
  }
}

TEST_CASE("auc is invariant to node relabeling") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 8;
    const auto wp = random_weights(n, rng);
    const auto truth = binarize(random_weights(n, rng), 0.4);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    WeightMatrix wp2(n);
    Adjacency t2(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        wp2.set(perm[i], perm[j], wp.at(i, j));
        t2.set(perm[i], perm[j], truth.edge(i, j));
      }
    CHECK(std::abs(auc(wp, truth) - auc(wp2, t2)) <= 1e-15);
  }
}

TEST_CASE("difficulty thresholds are inclusive at the lower bound") {
  CHECK(difficulty_pair(0.50).level == DifficultyLevel::Easy);
  CHECK(difficulty_pair(0.4999999).level == DifficultyLevel::Medium);
  CHECK(difficulty_pair(0.10).level == DifficultyLevel::Medium);
  CHECK(difficulty_pair(0.099).level == DifficultyLevel::Hard);
  CHECK(difficulty_pair(0.0).level == DifficultyLevel::Hard);
  CHECK(difficulty_pair(0.3).axis == DifficultyAxis::PairOverlap);
  CHECK_THROWS_AS(difficulty_pair(1.2), Error);
  CHECK_THROWS_AS(difficulty_pair(-0.1), Error);

  const std::vector<double> easy = {0.12, 0.12, 0.12};
  CHECK(difficulty_scene(easy).level == DifficultyLevel::Easy);
  CHECK(difficulty_scene(easy).axis == DifficultyAxis::SceneSparsity);
  const std::vector<double> boundary = {0.04};
  CHECK(difficulty_scene(boundary).level == DifficultyLevel::Medium);
  const std::vector<double> mean_boundary = {0.04, 0.04};
  CHECK(difficulty_scene(mean_boundary).level == DifficultyLevel::Medium);
  const std::vector<double> ten = {0.10};
  CHECK(difficulty_scene(ten).level == DifficultyLevel::Easy);
  const std::vector<double> zero = {0.0, 0.0};
  CHECK(difficulty_scene(zero).level == DifficultyLevel::Hard);
  CHECK_THROWS_AS(difficulty_scene(std::vector<double>{}), Error);
  CHECK(to_string(DifficultyLevel::Medium) == "medium");
}

TEST_CASE("CovisGraph invariants") {
  CovisGraph g({4, 7, 9});
  g.weights.set(0, 1, 0.4);
  g.set_threshold(0.3);
  CHECK_NOTHROW(g.validate());
  CHECK(g.index_of(9) == 2);
  CHECK_THROWS_AS(g.index_of(5), Error);
  g.adjacency->set(1, 2);
  CHECK_THROWS_AS(g.validate(), Error);
  CHECK_THROWS_AS(CovisGraph({1, 1}).validate(), Error);
  CHECK_THROWS_AS(g.weights.set(1, 1, 0.5), Error);
  const auto pairs = pair_overlaps(g.weights);
  CHECK(pairs == std::vector<double>{0.4, 0.0, 0.0});
}
