#include "baseline/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "common/error.hpp"
#include "common/rng.hpp"

namespace covision {
namespace {

// Bresenham circle of radius 3, clockwise from 12 o'clock.
constexpr std::array<std::array<int, 2>, 16> kCircle{{{0, -3}, {1, -3}, {2, -2}, {3, -1}, {3, 0}, {3, 1},
                                                      {2, 2},  {1, 3},  {0, 3},  {-1, 3}, {-2, 2}, {-3, 1},
                                                      {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3}}};

constexpr int kPatchRadius = 12;
constexpr int kSmoothRadius = 2;
constexpr int kBorder = kPatchRadius + kSmoothRadius + 1;
constexpr std::uint64_t kPatternSeed = 0x5eed0fb1e5ULL;

struct Pair {
  int u0, v0, u1, v1;
};

const std::array<Pair, 256>& sampling_pattern() {
  static const std::array<Pair, 256> pattern = [] {
    std::array<Pair, 256> p{};
    Rng rng(kPatternSeed);
    auto coord = [&] { return static_cast<int>(uniform_index(rng, 2 * kPatchRadius + 1)) - kPatchRadius; };
    for (auto& q : p) q = {coord(), coord(), coord(), coord()};
    return p;
  }();
  return pattern;
}

// Longest cyclic run of `sign` in the classification ring.
int longest_run(const std::array<int, 16>& cls, int sign) {
  int best = 0;
  int run = 0;
  for (int k = 0; k < 32; ++k) {
    if (cls[k % 16] == sign) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return std::min(best, 16);
}

// Number of sign changes between consecutive non-zero classes around the ring.
int alternations(const std::array<int, 16>& cls) {
  int first = -1;
  for (int k = 0; k < 16; ++k)
    if (cls[k] != 0) {
      first = k;
      break;
    }
  if (first < 0) return 0;
  int changes = 0;
  int last = cls[first];
  for (int k = 1; k <= 16; ++k) {
    const int c = cls[(first + k) % 16];
    if (c != 0 && c != last) {
      ++changes;
      last = c;
    }
  }
  return changes;
}

// Response of the circle test at (u, v): a contiguous arc brighter or darker
// than the center, or a saddle whose ring alternates around its own mean.
double corner_response(const GrayImage& img, int u, int v, const DetectorConfig& cfg) {
  const double center = img.at(u, v);
  std::array<double, 16> ring{};
  double mean = 0.0;
  for (int k = 0; k < 16; ++k) {
    ring[k] = img.at(u + kCircle[k][0], v + kCircle[k][1]);
    mean += ring[k];
  }
  mean /= 16.0;

  std::array<int, 16> by_center{};
  double arc_strength = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double diff = ring[k] - center;
    by_center[k] = diff > cfg.threshold ? 1 : (diff < -cfg.threshold ? -1 : 0);
    if (by_center[k] != 0) arc_strength += std::abs(diff) - cfg.threshold;
  }
  if (longest_run(by_center, 1) >= cfg.min_arc || longest_run(by_center, -1) >= cfg.min_arc) return arc_strength;

  std::array<int, 16> by_mean{};
  double saddle_strength = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double diff = ring[k] - mean;
    by_mean[k] = diff > cfg.threshold ? 1 : (diff < -cfg.threshold ? -1 : 0);
    if (by_mean[k] != 0) saddle_strength += std::abs(diff) - cfg.threshold;
  }
  if (alternations(by_mean) < 4 || longest_run(by_mean, 1) < 2 || longest_run(by_mean, -1) < 2) return 0.0;
  // An X-junction ring is point-symmetric about its center; off-center rings are not.
  double asymmetry = 0.0;
  for (int k = 0; k < 8; ++k) asymmetry += std::abs(ring[k] - ring[k + 8]);
  return std::max(0.0, saddle_strength - asymmetry);
}

GrayImage box_blur(const GrayImage& img, int radius) {
  GrayImage out(img.width, img.height);
  const int side = 2 * radius + 1;
  for (int v = 0; v < img.height; ++v) {
    for (int u = 0; u < img.width; ++u) {
      double sum = 0.0;
      for (int dv = -radius; dv <= radius; ++dv) {
        const int y = std::clamp(v + dv, 0, img.height - 1);
        for (int du = -radius; du <= radius; ++du) sum += img.at(std::clamp(u + du, 0, img.width - 1), y);
      }
      out.at(u, v) = sum / (side * side);
    }
  }
  return out;
}

}  // namespace

int hamming(const Descriptor& a, const Descriptor& b) {
  int d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += std::popcount(a[k] ^ b[k]);
  return d;
}

std::vector<Keypoint> detect(const GrayImage& image, int max_kp, const DetectorConfig& cfg) {
  require(max_kp >= 1, "detect: max_kp must be >= 1");
  require(image.values.size() == static_cast<std::size_t>(image.width) * image.height,
          "detect: image storage does not match its dimensions");
  std::vector<Keypoint> out;
  if (image.width <= 2 * kBorder || image.height <= 2 * kBorder) return out;

  GrayImage response(image.width, image.height);
  for (int v = kBorder; v < image.height - kBorder; ++v)
    for (int u = kBorder; u < image.width - kBorder; ++u) response.at(u, v) = corner_response(image, u, v, cfg);

  std::vector<Keypoint> found;
  for (int v = kBorder; v < image.height - kBorder; ++v) {
    for (int u = kBorder; u < image.width - kBorder; ++u) {
      const double r = response.at(u, v);
      if (r <= 0.0) continue;
      bool is_max = true;
      for (int dv = -cfg.nms_radius; dv <= cfg.nms_radius && is_max; ++dv) {
        for (int du = -cfg.nms_radius; du <= cfg.nms_radius; ++du) {
          if (du == 0 && dv == 0) continue;
          const int x = u + du;
          const int y = v + dv;
          if (x < 0 || y < 0 || x >= image.width || y >= image.height) continue;
          const double other = response.at(x, y);
          // Ties go to the earlier pixel in row-major order.
          if (other > r || (other == r && (dv < 0 || (dv == 0 && du < 0)))) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) found.push_back({u, v, r, {}});
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const Keypoint& a, const Keypoint& b) { return a.response > b.response; });
  if (found.size() > static_cast<std::size_t>(max_kp)) found.resize(static_cast<std::size_t>(max_kp));

  const GrayImage smooth = box_blur(image, kSmoothRadius);
  const auto& pattern = sampling_pattern();
  for (auto& kp : found) {
    for (std::size_t b = 0; b < pattern.size(); ++b) {
      const auto& q = pattern[b];
      if (smooth.at(kp.u + q.u0, kp.v + q.v0) < smooth.at(kp.u + q.u1, kp.v + q.v1)) {
        kp.descriptor[b / 64] |= std::uint64_t{1} << (b % 64);
      }
    }
  }
  return found;
}

}  // namespace covision
