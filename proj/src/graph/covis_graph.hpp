#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace covision {

// Symmetric n x n matrix of co-visibility degrees with a zero diagonal.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  /// Sets both (i, j) and (j, i). i must differ from j.
  void set(std::size_t i, std::size_t j, double value);

  /// Symmetric within 1e-12, zero diagonal, entries in [0, 1].
  void validate() const;
  bool operator==(const WeightMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Symmetric boolean adjacency with a zero diagonal.
class Adjacency {
 public:
  Adjacency() = default;
  explicit Adjacency(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool edge(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool present = true);

  /// Unordered edge count.
  std::size_t edge_count() const;
  /// Unordered edges (i < j) in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t degree(std::size_t i) const;

  void validate() const;
  bool operator==(const Adjacency&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct CovisGraph {
  std::vector<int> ids;
  WeightMatrix weights;
  std::optional<Adjacency> adjacency;
  std::optional<double> tau;

  CovisGraph() = default;
  explicit CovisGraph(std::vector<int> node_ids);

  std::size_t size() const { return ids.size(); }
  /// Index of a node id; throws invalid-input if absent.
  std::size_t index_of(int id) const;
  /// Binarizes the weights at tau and stores both.
  void set_threshold(double tau);

  void validate() const;
  bool operator==(const CovisGraph&) const = default;
};

constexpr double kIouEpsilon = 1e-9;
constexpr int kDefaultThresholds = 101;

/// a_ij = 1 iff d_ij > tau.
Adjacency binarize(const WeightMatrix& weights, double tau);

/// Edge IoU with an epsilon-guarded denominator; two empty graphs give 0.
double graph_iou(const Adjacency& a, const Adjacency& b);

struct CurvePoint {
  double threshold;
  double iou;
};

/// Graph IoU at thresholds i / (n - 1), i = 0..n-1.
std::vector<CurvePoint> iou_curve(const WeightMatrix& predicted, const Adjacency& truth, int thresholds);

/// Trapezoidal area under the IoU-versus-threshold curve.
double auc(const WeightMatrix& predicted, const Adjacency& truth, int thresholds = kDefaultThresholds);

enum class DifficultyAxis { PairOverlap, SceneSparsity };
enum class DifficultyLevel { Easy, Medium, Hard };

struct DifficultyLabel {
  DifficultyAxis axis;
  DifficultyLevel level;
  bool operator==(const DifficultyLabel&) const = default;
};

std::string_view to_string(DifficultyLevel level);

/// easy >= 0.50, medium in [0.10, 0.50), hard < 0.10.
DifficultyLabel difficulty_pair(double overlap);

/// Mean over the given pair overlaps; easy >= 0.10, medium in [0.04, 0.10), hard < 0.04.
DifficultyLabel difficulty_scene(std::span<const double> pair_overlaps);

/// Upper-triangle weights in row-major order.
std::vector<double> pair_overlaps(const WeightMatrix& weights);

}  // namespace covision
