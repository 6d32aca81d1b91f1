#include "follower/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace follower {

double dissimilarity(const StepRecord &record, double dt) {
  if (record.agents.empty()) return 0.0;
  double sum = 0.0;
  for (const auto &a : record.agents) sum += norm_sq(a.velocity - a.preferred);
  return dt / (2.0 * static_cast<double>(record.agents.size())) * sum;
}

double congestion(const StepRecord &record) {
  const std::size_t n = record.agents.size();
  if (n == 0) return 0.0;
  std::vector<double> speeds(n);
  for (std::size_t i = 0; i < n; ++i) speeds[i] = norm(record.agents[i].velocity);

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (speeds[i] < kMinHeadingSpeed) continue;
    const auto &a = record.agents[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || speeds[j] < kMinHeadingSpeed) continue;
      const auto &b = record.agents[j];
      const double cosine =
          std::clamp(dot(a.velocity, b.velocity) / (speeds[i] * speeds[j]), -1.0, 1.0);
      sum += 0.5 * (1.0 - cosine) * std::exp(-norm(a.position - b.position));
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n));
}

MetricSeries MetricSeries::padded(std::size_t length) const {
  MetricSeries out = *this;
  if (out.values.size() < length) out.values.resize(length, 0.0);
  return out;
}

double MetricSeries::peak(std::size_t from) const {
  double best = 0.0;
  for (std::size_t i = from; i < values.size(); ++i) best = std::max(best, values[i]);
  return best;
}

MetricSeries metric_series(const TrajectoryLog &log, MetricKind kind, double dt) {
  MetricSeries s;
  s.kind = kind;
  s.dt = dt;
  s.values.reserve(log.records.size());
  for (const auto &r : log.records) {
    s.values.push_back(kind == MetricKind::m1 ? dissimilarity(r, dt) : congestion(r));
  }
  return s;
}

double series_auc(const MetricSeries &series) {
  double area = 0.0;
  for (std::size_t i = 1; i < series.values.size(); ++i) {
    area += 0.5 * (series.values[i - 1] + series.values[i]) * series.dt;
  }
  return area;
}

namespace {

double min_distance(std::span<const Vec2> points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, norm_sq(points[i] - points[j]));
    }
  }
  return std::sqrt(best);
}

}  // namespace

double min_pair_distance(const TrajectoryLog &log) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vec2> pts;
  for (const auto &r : log.records) {
    pts.clear();
    for (const auto &a : r.agents) {
      if (!a.arrived) pts.push_back(a.position);
    }
    best = std::min(best, min_distance(pts));
  }
  pts.clear();
  for (const auto &a : log.final_state.agents) {
    if (!a.arrived) pts.push_back(a.position);
  }
  return std::min(best, min_distance(pts));
}

std::vector<BenchRow> bench_runtime(Model model, std::span<const int> agent_counts, int steps,
                                    std::uint64_t seed, SimParams base, Parallelism par) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  base.model = model;
  base.seed = seed;
  for (int n : agent_counts) {
    const Scenario scenario = build_scaled_circle(n, seed);
    CrowdState state = initial_state(scenario, base);
    std::vector<double> samples;
    for (int k = 0; k < kBenchWarmupSteps + steps; ++k) {
      const auto t0 = clock::now();
      auto [next, record] = step(state, base, par);
      const auto t1 = clock::now();
      state = std::move(next);
      if (k >= kBenchWarmupSteps) samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    BenchRow row;
    row.agents = n;
    row.model = model;
    row.steps_timed = static_cast<long>(samples.size());
    if (!samples.empty()) {
      const double mean =
          std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
      double var = 0.0;
      for (double s : samples) var += (s - mean) * (s - mean);
      row.mean_step_seconds = mean;
      row.stddev = samples.size() > 1 ? std::sqrt(var / static_cast<double>(samples.size() - 1)) : 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace follower
