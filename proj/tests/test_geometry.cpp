#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "follower/geometry.hpp"

using namespace follower;
using doctest::Approx;

TEST_CASE("rotate") {
  const Vec2 q = rotate({1, 0}, std::numbers::pi / 2);
  CHECK(q.x == Approx(0.0).epsilon(1e-15));
  CHECK(q.y == Approx(1.0));

  CHECK(rotate({3, -4}, 0.0) == Vec2{3, -4});

  const Vec2 h = rotate({1, 1}, std::numbers::pi);
  CHECK(h.x == Approx(-1.0));
  CHECK(h.y == Approx(-1.0));
}

TEST_CASE("cross2 and heaviside") {
  CHECK(cross2({1, 0}, {0, 1}) == 1.0);
  CHECK(cross2({1, 0}, {2, 0}) == 0.0);
  CHECK(cross2({0, 1}, {1, 0}) == -1.0);

  CHECK(heaviside(0.5) == 1);
  CHECK(heaviside(0.0) == 0);
  CHECK(heaviside(-3.0) == 0);
}

TEST_CASE("rotation and cross product properties") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const Vec2 v{coord(rng), coord(rng)};
    const Vec2 w{coord(rng), coord(rng)};
    const double a = angle(rng);
    const double b = angle(rng);

    const double n = norm(v);
    CHECK(std::fabs(norm(rotate(v, a)) - n) <= 1e-12 * n + 1e-300);

    const Vec2 twice = rotate(rotate(v, a), b);
    const Vec2 once = rotate(v, a + b);
    CHECK(norm(twice - once) <= 1e-9 * n);

    CHECK(cross2(v, w) == -cross2(w, v));
  }
}
