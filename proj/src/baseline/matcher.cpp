#include "baseline/matcher.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <optional>
#include <tuple>

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "common/rng.hpp"
#include "scenegen/scenario.hpp"

namespace covision {
namespace {

struct Nearest {
  std::size_t index = 0;
  int best = std::numeric_limits<int>::max();
  int second = std::numeric_limits<int>::max();
};

std::vector<Nearest> nearest(std::span<const Keypoint> from, std::span<const Keypoint> to) {
  std::vector<Nearest> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto& n = out[i];
    for (std::size_t j = 0; j < to.size(); ++j) {
      const int d = hamming(from[i].descriptor, to[j].descriptor);
      if (d < n.best) {
        n.second = n.best;
        n.best = d;
        n.index = j;
      } else if (d < n.second) {
        n.second = d;
      }
    }
  }
  return out;
}

bool passes_ratio(const Nearest& n, double ratio) {
  if (n.second == std::numeric_limits<int>::max()) return true;
  return n.best < ratio * n.second;
}

using Point = Eigen::Vector2d;

Eigen::Matrix3d normalizer(std::span<const Point> pts) {
  Point mean = Point::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double spread = 0.0;
  for (const auto& p : pts) spread += (p - mean).norm();
  spread /= static_cast<double>(pts.size());
  const double s = spread > 0.0 ? std::sqrt(2.0) / spread : 1.0;
  Eigen::Matrix3d t;
  t << s, 0, -s * mean.x(), 0, s, -s * mean.y(), 0, 0, 1;
  return t;
}

bool collinear(const Point& a, const Point& b, const Point& c) {
  const Point ab = b - a;
  const Point ac = c - a;
  return std::abs(ab.x() * ac.y() - ab.y() * ac.x()) < 1e-6;
}

// Direct linear transform from four correspondences, with normalization.
std::optional<Eigen::Matrix3d> homography(const std::array<Point, 4>& src, const std::array<Point, 4>& dst) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (collinear(src[i], src[j], src[k]) || collinear(dst[i], dst[j], dst[k])) return std::nullopt;
  const Eigen::Matrix3d ts = normalizer(src);
  const Eigen::Matrix3d td = normalizer(dst);
  Eigen::Matrix<double, 8, 9> a;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector3d p = ts * src[i].homogeneous();
    const Eigen::Vector3d q = td * dst[i].homogeneous();
    a.row(2 * i) << -p.x(), -p.y(), -1, 0, 0, 0, q.x() * p.x(), q.x() * p.y(), q.x();
    a.row(2 * i + 1) << 0, 0, 0, -p.x(), -p.y(), -1, q.y() * p.x(), q.y() * p.y(), q.y();
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 9>> svd(a, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 9, 1> h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  Eigen::Matrix3d out = td.inverse() * hn * ts;
  if (std::abs(out(2, 2)) < 1e-12 || !out.allFinite()) return std::nullopt;
  return out / out(2, 2);
}

bool keypoints_less(std::span<const Keypoint> a, std::span<const Keypoint> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Keypoint& x, const Keypoint& y) {
                                        return std::tie(x.u, x.v, x.response, x.descriptor) <
                                               std::tie(y.u, y.v, y.response, y.descriptor);
                                      });
}

}  // namespace

std::vector<Match> mutual_matches(std::span<const Keypoint> a, std::span<const Keypoint> b, double ratio) {
  std::vector<Match> out;
  if (a.empty() || b.empty()) return out;
  const auto forward = nearest(a, b);
  const auto backward = nearest(b, a);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& f = forward[i];
    const auto& r = backward[f.index];
    if (r.index == i && passes_ratio(f, ratio) && passes_ratio(r, ratio)) out.push_back({i, f.index});
  }
  return out;
}

std::size_t verified_inliers(std::span<const Keypoint> a, std::span<const Keypoint> b, const MatchConfig& cfg) {
  // Fixed orientation so that swapping the arguments gives the same answer.
  if (keypoints_less(b, a)) std::swap(a, b);
  const auto matches = mutual_matches(a, b, cfg.ratio);
  if (matches.size() < 4) return 0;
  std::vector<Point> src;
  std::vector<Point> dst;
  for (const auto& m : matches) {
    src.emplace_back(a[m.a].u, a[m.a].v);
    dst.emplace_back(b[m.b].u, b[m.b].v);
  }
  Rng rng(cfg.seed);
  std::size_t best = 0;
  const double limit = cfg.inlier_px * cfg.inlier_px;
  for (int it = 0; it < cfg.iterations; ++it) {
    std::array<std::size_t, 4> pick{};
    for (std::size_t k = 0; k < 4; ++k) {
      bool fresh;
      do {
        pick[k] = uniform_index(rng, matches.size());
        fresh = std::find(pick.begin(), pick.begin() + k, pick[k]) == pick.begin() + k;
      } while (!fresh);
    }
    const auto h = homography({src[pick[0]], src[pick[1]], src[pick[2]], src[pick[3]]},
                              {dst[pick[0]], dst[pick[1]], dst[pick[2]], dst[pick[3]]});
    if (!h) continue;
    std::size_t inliers = 0;
    for (std::size_t m = 0; m < matches.size(); ++m) {
      const Eigen::Vector3d p = *h * src[m].homogeneous();
      if (p.z() <= 0.0) continue;
      if ((p.hnormalized() - dst[m]).squaredNorm() <= limit) ++inliers;
    }
    best = std::max(best, inliers);
    if (best == matches.size()) break;
  }
  // Four correspondences always fit a homography exactly.
  return best > 4 ? best : 0;
}

double match_keypoints(std::span<const Keypoint> a, std::span<const Keypoint> b, const MatchConfig& cfg) {
  if (a.empty() || b.empty()) return 0.0;
  const auto inliers = verified_inliers(a, b, cfg);
  return static_cast<double>(inliers) / static_cast<double>(std::min(a.size(), b.size()));
}

double match_pair(const GrayImage& a, const GrayImage& b, int max_kp, const MatchConfig& cfg) {
  require(a.width > 0 && a.height > 0 && b.width > 0 && b.height > 0, "match: images must be non-empty");
  const auto ka = detect(a, max_kp, cfg.detector);
  const auto kb = detect(b, max_kp, cfg.detector);
  return match_keypoints(ka, kb, cfg);
}

CovisGraph predict_graph(const Scenario& scenario, int max_kp, const MatchConfig& cfg, int jobs) {
  if (scenario.images.size() != scenario.views.size() || scenario.views.empty()) {
    fail(ErrorKind::InvalidInput, "baseline: scenario '" + scenario.scene_id + "' has no rendered images");
  }
  std::vector<int> ids;
  for (const auto& v : scenario.views) ids.push_back(v.id);
  CovisGraph graph(ids);
  const std::size_t n = ids.size();
  std::vector<std::vector<Keypoint>> keypoints(n);
  parallel_for(n, jobs, [&](std::size_t k) { keypoints[k] = detect(scenario.images[k], max_kp, cfg.detector); });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t p) {
    values[p] = match_keypoints(keypoints[pairs[p].first], keypoints[pairs[p].second], cfg);
  });
  for (std::size_t p = 0; p < pairs.size(); ++p) graph.weights.set(pairs[p].first, pairs[p].second, values[p]);
  return graph;
}

}  // namespace covision
