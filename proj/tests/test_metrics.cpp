#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "follower/metrics.hpp"

using namespace follower;
using doctest::Approx;

namespace {

StepRecord record_of(std::initializer_list<std::array<Vec2, 3>> agents) {
  StepRecord r;
  int id = 0;
  for (const auto &[x, v, p] : agents) {
    AgentRecord a;
    a.id = id++;
    a.position = x;
    a.velocity = v;
    a.preferred = p;
    a.rotated = p;
    r.agents.push_back(a);
  }
  return r;
}

StepRecord random_record(std::mt19937_64 &rng, int n) {
  std::uniform_real_distribution<double> pos(-8.0, 8.0), vel(-2.0, 2.0);
  StepRecord r;
  for (int i = 0; i < n; ++i) {
    AgentRecord a;
    a.id = i;
    a.position = {pos(rng), pos(rng)};
    a.velocity = {vel(rng), vel(rng)};
    a.preferred = {vel(rng), vel(rng)};
    r.agents.push_back(a);
  }
  return r;
}

StepRecord transformed(StepRecord r, double angle, Vec2 shift) {
  for (auto &a : r.agents) {
    a.position = rotate(a.position, angle) + shift;
    a.velocity = rotate(a.velocity, angle);
    a.preferred = rotate(a.preferred, angle);
  }
  return r;
}

MetricSeries series(std::vector<double> v, double dt = 0.1) {
  MetricSeries s;
  s.values = std::move(v);
  s.dt = dt;
  return s;
}

}  // namespace

TEST_CASE("dissimilarity examples") {
  CHECK(dissimilarity(record_of({{{{0, 0}, {1, 2}, {1, 2}}}}), 0.1) == 0.0);
  CHECK(dissimilarity(record_of({{{{0, 0}, {1, 0}, {0, 0}}}}), 0.1) == Approx(0.05).epsilon(1e-14));
  CHECK(dissimilarity(StepRecord{}, 0.1) == 0.0);
}

TEST_CASE("dissimilarity ignores the rotated preference") {
  StepRecord r = record_of({{{{0, 0}, {1, 0}, {1, 0}}}});
  r.agents[0].rotated = {0, 1};
  CHECK(dissimilarity(r, 0.1) == 0.0);
}

TEST_CASE("dissimilarity is a mean over agents") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const StepRecord r = random_record(rng, 7);
    StepRecord twice = r;
    twice.agents.insert(twice.agents.end(), r.agents.begin(), r.agents.end());
    CHECK(dissimilarity(twice, 0.1) == Approx(dissimilarity(r, 0.1)).epsilon(1e-14));
    CHECK(dissimilarity(r, 0.1) >= 0.0);
  }
}

TEST_CASE("congestion examples") {
  CHECK(congestion(record_of({{{{0, 0}, {1, 0}, {}}}, {{{3, 0}, {1, 0}, {}}}})) == 0.0);
  CHECK(congestion(record_of({{{{0, 0}, {1, 0}, {}}}, {{{1, 0}, {-1, 0}, {}}}})) ==
        Approx(std::exp(-1.0) / 2.0).epsilon(1e-14));
  CHECK(congestion(record_of({{{{0, 0}, {1, 0}, {}}}, {{{0, 0}, {0, 1}, {}}}})) ==
        Approx(0.25).epsilon(1e-14));
  // A stopped agent has no heading and contributes nothing.
  CHECK(congestion(record_of({{{{0, 0}, {1, 0}, {}}}, {{{1, 0}, {0, 0}, {}}}})) == 0.0);
}

TEST_CASE("congestion matches a direct double sum") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const StepRecord r = random_record(rng, 12);
    const double n = static_cast<double>(r.agents.size());
    double sum = 0.0;
    for (const auto &a : r.agents) {
      for (const auto &b : r.agents) {
        if (a.id == b.id) continue;
        const double c = (a.velocity.x * b.velocity.x + a.velocity.y * b.velocity.y) /
                         (std::hypot(a.velocity.x, a.velocity.y) * std::hypot(b.velocity.x, b.velocity.y));
        sum += 0.5 * (1.0 - c) * std::exp(-std::hypot(a.position.x - b.position.x, a.position.y - b.position.y));
      }
    }
    CHECK(congestion(r) == Approx(sum / (n * n)).epsilon(1e-12));
  }
}

TEST_CASE("congestion bounds and rigid-motion invariance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-3.0, 3.0), off(-50.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    const StepRecord r = random_record(rng, 15);
    const double m2 = congestion(r);
    CHECK(m2 >= 0.0);
    CHECK(m2 < 1.0);
    const StepRecord moved = transformed(r, ang(rng), {off(rng), off(rng)});
    CHECK(std::fabs(congestion(moved) - m2) <= 1e-12);
    CHECK(std::fabs(dissimilarity(moved, 0.1) - dissimilarity(r, 0.1)) <= 1e-12);
  }
}

TEST_CASE("trapezoid area") {
  CHECK(series_auc(series(std::vector<double>(10, 1.0))) == Approx(0.9).epsilon(1e-14));
  CHECK(series_auc(series(std::vector<double>(10, 0.0))) == 0.0);
  CHECK(series_auc(series({3.0})) == 0.0);
  CHECK(series_auc(series({0.0, 1.0, 0.0}, 0.5)) == Approx(0.5));
}

TEST_CASE("series padding and peak") {
  MetricSeries s = series({0.1, 0.4, 0.2});
  s.kind = MetricKind::m2;
  const MetricSeries p = s.padded(5);
  CHECK(p.values == std::vector<double>{0.1, 0.4, 0.2, 0.0, 0.0});
  CHECK(p.kind == MetricKind::m2);
  CHECK(s.padded(2).values == s.values);
  CHECK(s.peak() == 0.4);
  CHECK(s.peak(2) == 0.2);
  CHECK(s.peak(10) == 0.0);
  CHECK(series_auc(p) == Approx(series_auc(s) + 0.5 * 0.2 * 0.1));
  const MetricSeries settled = series({0.3, 0.0});
  CHECK(series_auc(settled.padded(50)) == series_auc(settled));
}

TEST_CASE("metric series over a run") {
  const Scenario sc = *builtin_scenario("2-group", 42);
  SimParams params;
  params.t_max = 50;
  const TrajectoryLog log = run(sc, params);
  const MetricSeries m1 = metric_series(log, MetricKind::m1, params.dt);
  const MetricSeries m2 = metric_series(log, MetricKind::m2, params.dt);
  REQUIRE(m1.values.size() == log.steps());
  REQUIRE(m2.values.size() == log.steps());
  for (std::size_t t = 0; t < log.steps(); ++t) {
    CHECK(m1.values[t] == dissimilarity(log.records[t], params.dt));
    CHECK(m2.values[t] == congestion(log.records[t]));
  }
  CHECK(min_pair_distance(log) >= 0.5);
}

TEST_CASE("minimum pair distance skips arrived agents") {
  TrajectoryLog log;
  log.final_state.agents.resize(2);
  log.final_state.agents[0].position = {0, 0};
  log.final_state.agents[1].position = {0.5, 0};
  CHECK(min_pair_distance(log) == Approx(0.5));
  log.final_state.agents[1].arrived = true;
  CHECK(std::isinf(min_pair_distance(log)));
}

TEST_CASE("runtime benchmark sanity") {
  const std::vector<int> counts{10, 40};
  const auto rows = bench_runtime(Model::follower, counts, 15, 42);
  REQUIRE(rows.size() == 2);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].agents == counts[k]);
    CHECK(rows[k].model == Model::follower);
    CHECK(rows[k].steps_timed == 15);
    CHECK(rows[k].mean_step_seconds > 0.0);
    CHECK(rows[k].stddev >= 0.0);
  }
}
