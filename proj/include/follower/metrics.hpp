#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "follower/engine.hpp"
#include "follower/state.hpp"

namespace follower {

/// Velocities shorter than this have no defined heading for congestion (m/s).
inline constexpr double kMinHeadingSpeed = 1e-9;

/// M1: (dt / 2N) * sum |v_i - p_i|^2 against the unrotated preferences.
double dissimilarity(const StepRecord &record, double dt);

/// M2: (1 / N^2) * sum over ordered pairs i != j of
/// (1 - cos angle(v_i, v_j)) / 2 * exp(-|x_i - x_j|).
double congestion(const StepRecord &record);

enum class MetricKind { m1, m2 };

struct MetricSeries {
  MetricKind kind = MetricKind::m1;
  std::vector<double> values;
  double dt = 0.1;

  /// Copy extended with zeros to `length` samples (agents at rest after
  /// arrival contribute nothing to either metric).
  MetricSeries padded(std::size_t length) const;
  double peak(std::size_t from = 0) const;
};

MetricSeries metric_series(const TrajectoryLog &log, MetricKind kind, double dt);

/// Trapezoidal area under the series, in value * seconds.
double series_auc(const MetricSeries &series);

/// Smallest center distance between two agents still en route, over every
/// record and the final state. Infinity when no such pair ever exists.
double min_pair_distance(const TrajectoryLog &log);

struct BenchRow {
  int agents = 0;
  Model model = Model::follower;
  double mean_step_seconds = 0.0;
  double stddev = 0.0;
  long steps_timed = 0;
};

inline constexpr int kBenchWarmupSteps = 10;

/// Wall-clock time per step on the scaled circle for each agent count. The
/// `steps` timed steps follow kBenchWarmupSteps untimed ones.
std::vector<BenchRow> bench_runtime(Model model, std::span<const int> agent_counts, int steps,
                                    std::uint64_t seed, SimParams base = {},
                                    Parallelism par = {});

}  // namespace follower
