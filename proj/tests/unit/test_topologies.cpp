#include <map>
#include <random>

#include "common/error.hpp"
#include "doctest.h"
#include "geometry/camera.hpp"
#include "topo/topologies.hpp"

using namespace covision;

TEST_CASE("star and complete edge counts") {
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto s = star(n, n / 2);
    CHECK(s.edge_count() == n - 1);
    CHECK(s.degree(n / 2) == n - 1);
    CHECK_NOTHROW(s.validate());
    const auto c = complete(n);
    CHECK(c.edge_count() == n * (n - 1) / 2);
    CHECK_NOTHROW(c.validate());
  }
  CHECK_THROWS_AS(star(4, 4), Error);
  CHECK_THROWS_AS(star(0, 0), Error);
}

TEST_CASE("random_matched gives the exact count and uniform pairs") {
  const std::size_t n = 6;  // 15 pairs
  const std::size_t k = 5;
  std::map<std::pair<std::size_t, std::size_t>, int> freq;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    const auto a = random_matched(n, k, static_cast<std::uint64_t>(s));
    REQUIRE(a.edge_count() == k);
    for (const auto& e : a.edges()) ++freq[e];
  }
  REQUIRE(freq.size() == 15);
  // each pair is included with probability k / 15
  for (const auto& [pair, count] : freq) CHECK(std::abs(static_cast<double>(count) / draws - 1.0 / 3.0) <= 0.02);
  CHECK(random_matched(n, k, 42) == random_matched(n, k, 42));
  CHECK(random_matched(n, 15, 1).edge_count() == 15);
  CHECK(random_matched(n, 0, 1).edge_count() == 0);
  CHECK_THROWS_AS(random_matched(n, 16, 1), Error);
}

TEST_CASE("proximity is inclusive at the distance") {
  std::vector<Pose> poses(3);
  poses[1].position = {3.0, 0, 0};
  poses[2].position = {0, 0, 3.5};
  const auto a = gt_proximity(poses, 3.0);
  CHECK(a.edge(0, 1));
  CHECK_FALSE(a.edge(0, 2));
  CHECK_FALSE(a.edge(1, 2));
  CHECK_THROWS_AS(gt_proximity(poses, 0.0), Error);
}

TEST_CASE("high_covis is inclusive at 0.50") {
  WeightMatrix w(4);
  w.set(0, 1, 0.50);
  w.set(1, 2, 0.4999999);
  w.set(2, 3, 0.9);
  const auto a = high_covis(w);
  CHECK(a.edge(0, 1));
  CHECK_FALSE(a.edge(1, 2));
  CHECK(a.edge(2, 3));
  CHECK(a.edge_count() == 2);
}

TEST_CASE("pair list uses node ids, sorted") {
  Adjacency a(3);
  a.set(2, 0);
  a.set(1, 2);
  const std::vector<int> ids = {30, 10, 20};
  CHECK(pair_list(a, ids) == "10 20\n20 30\n");
  CHECK(pair_list(Adjacency(3), ids).empty());
  CHECK_THROWS_AS(pair_list(a, std::vector<int>{1, 2}), Error);
}
