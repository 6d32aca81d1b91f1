#include "follower/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

namespace follower {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream &out, const std::vector<StepRecord> &records) {
  out << kTrajectoryHeader << '\n';
  for (const auto &r : records) {
    for (const auto &a : r.agents) {
      out << r.step << ',' << a.id << ',' << format_double(a.position.x) << ','
          << format_double(a.position.y) << ',' << format_double(a.velocity.x) << ','
          << format_double(a.velocity.y) << ',' << format_double(a.preferred.x) << ','
          << format_double(a.preferred.y) << ',' << format_double(a.rotated.x) << ','
          << format_double(a.rotated.y) << ',' << format_double(a.theta) << '\n';
    }
  }
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_field(std::string_view text, std::size_t line_no) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw CsvError("line " + std::to_string(line_no) + ": bad value '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<StepRecord> read_trajectory_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("line 1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) throw CsvError("line 1: unexpected header");

  std::vector<StepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 11) {
      throw CsvError("line " + std::to_string(line_no) + ": expected 11 fields, got " +
                     std::to_string(f.size()));
    }
    const long step = parse_field<long>(f[0], line_no);
    AgentRecord a;
    a.id = parse_field<int>(f[1], line_no);
    a.position = {parse_field<double>(f[2], line_no), parse_field<double>(f[3], line_no)};
    a.velocity = {parse_field<double>(f[4], line_no), parse_field<double>(f[5], line_no)};
    a.preferred = {parse_field<double>(f[6], line_no), parse_field<double>(f[7], line_no)};
    a.rotated = {parse_field<double>(f[8], line_no), parse_field<double>(f[9], line_no)};
    a.theta = parse_field<double>(f[10], line_no);
    a.arrived = a.preferred == Vec2{};
    if (records.empty() || records.back().step != step) {
      if (!records.empty() && step < records.back().step) {
        throw CsvError("line " + std::to_string(line_no) + ": steps out of order");
      }
      records.push_back({step, {}});
    }
    records.back().agents.push_back(a);
  }
  return records;
}

void write_metrics_csv(std::ostream &out, const MetricSeries &m1, const MetricSeries &m2) {
  out << kMetricsHeader << '\n';
  const std::size_t n = std::max(m1.values.size(), m2.values.size());
  const MetricSeries a = m1.padded(n);
  const MetricSeries b = m2.padded(n);
  for (std::size_t i = 0; i < n; ++i) {
    out << i << ',' << format_double(static_cast<double>(i) * m1.dt) << ','
        << format_double(a.values[i]) << ',' << format_double(b.values[i]) << '\n';
  }
}

void write_compare_csv(std::ostream &out, const std::vector<LabeledRun> &runs) {
  out << kCompareHeader << '\n';
  std::size_t n = 0;
  for (const auto &r : runs) n = std::max({n, r.m1.values.size(), r.m2.values.size()});
  for (const auto &r : runs) {
    const MetricSeries a = r.m1.padded(n);
    const MetricSeries b = r.m2.padded(n);
    for (std::size_t i = 0; i < n; ++i) {
      out << r.label << ',' << i << ',' << format_double(static_cast<double>(i) * r.m1.dt) << ','
          << format_double(a.values[i]) << ',' << format_double(b.values[i]) << '\n';
    }
  }
}

void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows) {
  out << kBenchHeader << '\n';
  for (const auto &r : rows) {
    out << r.agents << ',' << to_string(r.model) << ',' << format_double(r.mean_step_seconds)
        << ',' << format_double(r.stddev) << '\n';
  }
}

nlohmann::ordered_json params_to_json(const SimParams &p) {
  nlohmann::ordered_json j;
  j["dt"] = p.dt;
  j["agent_radius"] = p.agent_radius;
  j["k_gain"] = p.k_gain;
  j["neighbor_radius"] = p.neighbor_radius;
  j["s_pref"] = p.s_pref;
  j["v_max"] = p.v_max;
  j["orca_horizon"] = p.orca_horizon;
  j["orca_neighbor_dist"] = p.orca_neighbor_dist;
  j["orca_max_neighbors"] = p.orca_max_neighbors;
  j["t_max"] = p.t_max;
  j["seed"] = p.seed;
  j["model"] = std::string(to_string(p.model));
  return j;
}

RunSummary summarize(const std::string &scenario, const TrajectoryLog &log, const SimParams &p) {
  RunSummary s;
  s.scenario = scenario;
  s.agents = static_cast<int>(log.initial.agents.size());
  s.steps = static_cast<long>(log.steps());
  s.deadlock = log.deadlock;
  const MetricSeries m1 = metric_series(log, MetricKind::m1, p.dt);
  const MetricSeries m2 = metric_series(log, MetricKind::m2, p.dt);
  s.m1_auc = series_auc(m1);
  s.m2_auc = series_auc(m2);
  s.m1_peak = m1.peak();
  s.m2_peak = m2.peak();
  s.min_pair_distance = min_pair_distance(log);
  s.params = p;
  return s;
}

nlohmann::ordered_json summary_to_json(const RunSummary &s) {
  nlohmann::ordered_json j;
  j["scenario"] = s.scenario;
  j["agents"] = s.agents;
  j["steps"] = s.steps;
  j["deadlock"] = s.deadlock;
  j["m1_auc"] = s.m1_auc;
  j["m2_auc"] = s.m2_auc;
  j["m1_peak"] = s.m1_peak;
  j["m2_peak"] = s.m2_peak;
  // JSON has no infinity; a single-agent run reports null.
  if (std::isfinite(s.min_pair_distance)) {
    j["min_pair_distance"] = s.min_pair_distance;
  } else {
    j["min_pair_distance"] = nullptr;
  }
  j["params"] = params_to_json(s.params);
  return j;
}

}  // namespace follower
