#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "baseline/features.hpp"
#include "baseline/gray_image.hpp"
#include "graph/covis_graph.hpp"

namespace covision {

struct Scenario;

struct MatchConfig {
  double ratio = 0.8;
  double inlier_px = 3.0;
  int iterations = 500;
  std::uint64_t seed = 0;
  DetectorConfig detector;
};

struct Match {
  std::size_t a;
  std::size_t b;
};

/// Mutual nearest neighbours by Hamming distance passing the ratio test in
/// both directions, ordered by index into `a`.
std::vector<Match> mutual_matches(std::span<const Keypoint> a, std::span<const Keypoint> b, double ratio);

/// Largest homography-consistent subset found by seeded 4-point sampling;
/// 0 unless some match beyond the minimal sample supports the model.
std::size_t verified_inliers(std::span<const Keypoint> a, std::span<const Keypoint> b, const MatchConfig& cfg);

/// inliers / min(|a|, |b|); 0 when either list is empty.
double match_keypoints(std::span<const Keypoint> a, std::span<const Keypoint> b, const MatchConfig& cfg = {});

double match_pair(const GrayImage& a, const GrayImage& b, int max_kp, const MatchConfig& cfg = {});

/// Edge probabilities for every unordered view pair of a scenario with images.
CovisGraph predict_graph(const Scenario& scenario, int max_kp, const MatchConfig& cfg = {}, int jobs = 1);

}  // namespace covision
