#include <doctest.h>

#include <stdexcept>

#include <random>

#include "follower/neighbor_index.hpp"

using namespace follower;

namespace {

std::vector<int> brute(const std::vector<Vec2> &pts, std::size_t i, double r) {
  std::vector<int> out;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j != i && norm_sq(pts[j] - pts[i]) <= r * r) out.push_back(static_cast<int>(j));
  }
  return out;
}

}  // namespace

TEST_CASE("lone agent has no neighbors") {
  const std::vector<Vec2> pts{{1, 2}};
  NeighborIndex idx(pts, 10.0);
  CHECK(idx.neighbors_within(0, 10.0).empty());
}

TEST_CASE("two agents 5 m apart see each other within 10 m") {
  const std::vector<Vec2> pts{{0, 0}, {3, 4}};
  NeighborIndex idx(pts, 10.0);
  CHECK(idx.neighbors_within(0, 10.0) == std::vector<int>{1});
  CHECK(idx.neighbors_within(1, 10.0) == std::vector<int>{0});
  CHECK(idx.neighbors_within(0, 4.999).empty());
  CHECK(idx.neighbors_within(0, 5.0) == std::vector<int>{1});
}

TEST_CASE("radius queries match brute force") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-40.0, 40.0);
  std::uniform_real_distribution<double> rad(0.0, 25.0);
  std::uniform_real_distribution<double> cell(0.5, 20.0);
  std::uniform_int_distribution<int> count(1, 200);

  // 100 agents, 1000 queries.
  std::vector<Vec2> pts;
  for (int i = 0; i < 100; ++i) pts.push_back({pos(rng), pos(rng)});
  NeighborIndex idx(pts, 15.0);
  for (int q = 0; q < 1000; ++q) {
    const auto i = static_cast<std::size_t>(q % 100);
    const double r = rad(rng);
    REQUIRE(idx.neighbors_within(static_cast<int>(i), r) == brute(pts, i, r));
  }

  // Randomized crowd sizes and cell sizes.
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Vec2> cloud;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) cloud.push_back({pos(rng), pos(rng)});
    NeighborIndex grid(cloud, cell(rng));
    for (int i = 0; i < n; ++i) {
      const double r = rad(rng);
      REQUIRE(grid.neighbors_within(i, r) == brute(cloud, static_cast<std::size_t>(i), r));
    }
  }
}

TEST_CASE("excluded entries never appear in results") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {2, 0}};
  const std::vector<std::uint8_t> include{1, 0, 1};
  NeighborIndex idx(pts, 5.0, include);
  CHECK(idx.neighbors_within(0, 5.0) == std::vector<int>{2});
  CHECK(idx.neighbors_within(1, 5.0) == std::vector<int>{0, 2});
}

TEST_CASE("cell size must be positive") {
  const std::vector<Vec2> pts{{0, 0}};
  CHECK_THROWS_AS(NeighborIndex(pts, 0.0), std::invalid_argument);
}
