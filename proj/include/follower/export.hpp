#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "follower/engine.hpp"
#include "follower/metrics.hpp"

namespace follower {

inline constexpr const char *kTrajectoryHeader =
    "step,agent_id,pos_x,pos_y,vel_x,vel_y,pref_x,pref_y,rot_pref_x,rot_pref_y,theta";
inline constexpr const char *kMetricsHeader = "step,time,m1,m2";
inline constexpr const char *kCompareHeader = "model,step,time,m1,m2";
inline constexpr const char *kBenchHeader = "agents,model,mean_step_seconds,stddev";

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

void write_trajectory_csv(std::ostream &out, const std::vector<StepRecord> &records);
/// Throws CsvError with the offending line number on malformed input.
std::vector<StepRecord> read_trajectory_csv(std::istream &in);

void write_metrics_csv(std::ostream &out, const MetricSeries &m1, const MetricSeries &m2);

struct LabeledRun {
  std::string label;
  MetricSeries m1;
  MetricSeries m2;
};
/// Long-format table; every run is zero-padded to the longest one.
void write_compare_csv(std::ostream &out, const std::vector<LabeledRun> &runs);

void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows);

nlohmann::ordered_json params_to_json(const SimParams &p);

struct RunSummary {
  std::string scenario;
  int agents = 0;
  long steps = 0;
  bool deadlock = false;
  double m1_auc = 0.0;
  double m2_auc = 0.0;
  double m1_peak = 0.0;
  double m2_peak = 0.0;
  double min_pair_distance = 0.0;
  SimParams params;
};

RunSummary summarize(const std::string &scenario, const TrajectoryLog &log, const SimParams &p);
nlohmann::ordered_json summary_to_json(const RunSummary &s);

}  // namespace follower
