#include "graph/covis_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "common/error.hpp"

namespace covision {

void WeightMatrix::set(std::size_t i, std::size_t j, double value) {
  require(i < n_ && j < n_ && i != j, "weights: index out of range or on the diagonal");
  data_[i * n_ + j] = value;
  data_[j * n_ + i] = value;
}

void WeightMatrix::validate() const {
  require(data_.size() == n_ * n_, "weights: storage does not match size");
  for (std::size_t i = 0; i < n_; ++i) {
    require(at(i, i) == 0.0, "weights: diagonal must be zero");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double w = at(i, j);
      require(std::isfinite(w) && w >= 0.0 && w <= 1.0, "weights: entries must lie in [0, 1]");
      require(std::abs(w - at(j, i)) <= 1e-12, "weights: matrix must be symmetric");
    }
  }
}

void Adjacency::set(std::size_t i, std::size_t j, bool present) {
  require(i < n_ && j < n_ && i != j, "adjacency: index out of range or on the diagonal");
  bits_[i * n_ + j] = present ? 1 : 0;
  bits_[j * n_ + i] = present ? 1 : 0;
}

std::size_t Adjacency::edge_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1})) / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Adjacency::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (edge(i, j)) out.emplace_back(i, j);
  return out;
}

std::size_t Adjacency::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < n_; ++j) d += edge(i, j) ? 1 : 0;
  return d;
}

void Adjacency::validate() const {
  require(bits_.size() == n_ * n_, "adjacency: storage does not match size");
  for (std::size_t i = 0; i < n_; ++i) {
    require(!edge(i, i), "adjacency: diagonal must be zero");
    for (std::size_t j = i + 1; j < n_; ++j)
      require(edge(i, j) == edge(j, i), "adjacency: matrix must be symmetric");
  }
}

CovisGraph::CovisGraph(std::vector<int> node_ids) : ids(std::move(node_ids)), weights(ids.size()) {}

std::size_t CovisGraph::index_of(int id) const {
  const auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) fail(ErrorKind::InvalidInput, "graph: unknown node id " + std::to_string(id));
  return static_cast<std::size_t>(it - ids.begin());
}

void CovisGraph::set_threshold(double t) {
  adjacency = binarize(weights, t);
  tau = t;
}

void CovisGraph::validate() const {
  require(weights.size() == ids.size(), "graph: weight matrix size does not match node count");
  auto sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "graph: duplicate node id");
  weights.validate();
  if (adjacency) {
    require(adjacency->size() == ids.size(), "graph: adjacency size does not match node count");
    adjacency->validate();
    if (tau) {
      require(*adjacency == binarize(weights, *tau), "graph: adjacency disagrees with weights at tau");
    }
  }
}

Adjacency binarize(const WeightMatrix& weights, double tau) {
  require(std::isfinite(tau) && tau >= 0.0 && tau <= 1.0, "binarize: tau must lie in [0, 1]");
  const std::size_t n = weights.size();
  Adjacency a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (weights.at(i, j) > tau) a.set(i, j);
  return a;
}

double graph_iou(const Adjacency& a, const Adjacency& b) {
  require(a.size() == b.size(), "graph IoU: node counts differ (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
  // Ordered off-diagonal sums; the factor of two cancels apart from epsilon.
  std::size_t both = 0;
  std::size_t either = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i == j) continue;
      const bool x = a.edge(i, j);
      const bool y = b.edge(i, j);
      both += (x && y) ? 1 : 0;
      either += (x || y) ? 1 : 0;
    }
  }
  return static_cast<double>(both) / (static_cast<double>(either) + kIouEpsilon);
}

std::vector<CurvePoint> iou_curve(const WeightMatrix& predicted, const Adjacency& truth, int thresholds) {
  require(thresholds >= 2, "AUC: at least two thresholds are required");
  std::vector<CurvePoint> curve;
  curve.reserve(static_cast<std::size_t>(thresholds));
  for (int i = 0; i < thresholds; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(thresholds - 1);
    curve.push_back({t, graph_iou(binarize(predicted, t), truth)});
  }
  return curve;
}

double auc(const WeightMatrix& predicted, const Adjacency& truth, int thresholds) {
  const auto curve = iou_curve(predicted, truth, thresholds);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    area += (curve[i].iou + curve[i + 1].iou) / 2.0 * (curve[i + 1].threshold - curve[i].threshold);
  }
  return area;
}

std::string_view to_string(DifficultyLevel level) {
  switch (level) {
    case DifficultyLevel::Easy: return "easy";
    case DifficultyLevel::Medium: return "medium";
    case DifficultyLevel::Hard: return "hard";
  }
  return "unknown";
}

DifficultyLabel difficulty_pair(double overlap) {
  require(std::isfinite(overlap) && overlap >= 0.0 && overlap <= 1.0, "difficulty: overlap must lie in [0, 1]");
  if (overlap >= 0.50) return {DifficultyAxis::PairOverlap, DifficultyLevel::Easy};
  if (overlap >= 0.10) return {DifficultyAxis::PairOverlap, DifficultyLevel::Medium};
  return {DifficultyAxis::PairOverlap, DifficultyLevel::Hard};
}

DifficultyLabel difficulty_scene(std::span<const double> pair_overlaps) {
  require(!pair_overlaps.empty(), "difficulty: scene needs at least one pair");
  for (double o : pair_overlaps)
    require(std::isfinite(o) && o >= 0.0 && o <= 1.0, "difficulty: overlap must lie in [0, 1]");
  const double mean =
      std::accumulate(pair_overlaps.begin(), pair_overlaps.end(), 0.0) / static_cast<double>(pair_overlaps.size());
  if (mean >= 0.10) return {DifficultyAxis::SceneSparsity, DifficultyLevel::Easy};
  if (mean >= 0.04) return {DifficultyAxis::SceneSparsity, DifficultyLevel::Medium};
  return {DifficultyAxis::SceneSparsity, DifficultyLevel::Hard};
}

std::vector<double> pair_overlaps(const WeightMatrix& weights) {
  std::vector<double> out;
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (std::size_t j = i + 1; j < weights.size(); ++j) out.push_back(weights.at(i, j));
  return out;
}

}  // namespace covision
