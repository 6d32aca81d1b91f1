#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "follower/export.hpp"
#include "follower/svg.hpp"

using namespace follower;
using doctest::Approx;

namespace {

// Checks that every element is closed in order and that the document has a
// single <svg> root. Returns an empty string on success.
std::string xml_problem(const std::string &doc) {
  std::vector<std::string> open;
  int roots = 0;
  std::size_t pos = 0;
  while ((pos = doc.find('<', pos)) != std::string::npos) {
    const std::size_t end = doc.find('>', pos);
    if (end == std::string::npos) return "unterminated tag";
    const std::string tag = doc.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return "empty tag";
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (open.empty() || open.back() != name) return "mismatched </" + name + ">";
      open.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (open.empty()) {
      ++roots;
      if (name != "svg") return "root is " + name;
    }
    if (tag.back() != '/') open.push_back(name);
  }
  if (!open.empty()) return "unclosed <" + open.back() + ">";
  if (roots != 1) return "expected one root";
  return "";
}

std::vector<StepRecord> random_records(std::mt19937_64 &rng, int steps, int n) {
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  std::vector<StepRecord> out;
  for (int t = 0; t < steps; ++t) {
    StepRecord r;
    r.step = t;
    for (int i = 0; i < n; ++i) {
      AgentRecord a;
      a.id = i;
      a.position = {u(rng), u(rng)};
      a.velocity = {u(rng) / 10, u(rng) / 10};
      a.preferred = {u(rng) / 7, u(rng) / 13};
      a.rotated = {u(rng) / 3, 1.0 / 3.0};
      a.theta = u(rng) * 1e-3;
      r.agents.push_back(a);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

TEST_CASE("format_double round trips") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.15) == "0.15");
  CHECK(format_double(-1.5) == "-1.5");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 10000; ++k) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 30) - 15);
    REQUIRE(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("trajectory csv header and layout") {
  std::vector<StepRecord> records(1);
  AgentRecord a;
  a.id = 3;
  a.position = {1, 2};
  a.velocity = {0.5, 0};
  a.preferred = {1.5, 0};
  a.rotated = {1.25, 0.75};
  a.theta = 0.25;
  records[0].step = 0;
  records[0].agents.push_back(a);
  std::ostringstream out;
  write_trajectory_csv(out, records);
  CHECK(out.str() ==
        "step,agent_id,pos_x,pos_y,vel_x,vel_y,pref_x,pref_y,rot_pref_x,rot_pref_y,theta\n"
        "0,3,1,2,0.5,0,1.5,0,1.25,0.75,0.25\n");
}

TEST_CASE("trajectory csv round trips exactly") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto records = random_records(rng, 5, 7);
    std::ostringstream out;
    write_trajectory_csv(out, records);
    std::istringstream in(out.str());
    const auto back = read_trajectory_csv(in);
    REQUIRE(back.size() == records.size());
    for (std::size_t t = 0; t < back.size(); ++t) {
      CHECK(back[t].step == records[t].step);
      REQUIRE(back[t].agents.size() == records[t].agents.size());
      for (std::size_t i = 0; i < back[t].agents.size(); ++i) {
        const auto &x = back[t].agents[i], &y = records[t].agents[i];
        CHECK(x.id == y.id);
        CHECK(x.position == y.position);
        CHECK(x.velocity == y.velocity);
        CHECK(x.preferred == y.preferred);
        CHECK(x.rotated == y.rotated);
        CHECK(x.theta == y.theta);
      }
    }
    std::ostringstream again;
    write_trajectory_csv(again, back);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("malformed trajectory csv") {
  const auto error = [](const std::string &text) {
    std::istringstream in(text);
    try {
      read_trajectory_csv(in);
    } catch (const CsvError &e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string header = std::string(kTrajectoryHeader) + "\n";
  CHECK(error("a,b\n").find("line 1") != std::string::npos);
  CHECK(error(header + "0,0,1,2,3\n").find("line 2") != std::string::npos);
  CHECK(error(header + "0,0,1,2,3,4,5,6,7,8,nine\n").find("line 2") != std::string::npos);
  CHECK(error("").find("no error") == std::string::npos);
  std::istringstream only(header);
  CHECK(read_trajectory_csv(only).empty());
}

TEST_CASE("metrics and compare csv") {
  MetricSeries m1, m2;
  m1.values = {0.5, 0.25};
  m2.values = {0.125, 0.0};
  std::ostringstream out;
  write_metrics_csv(out, m1, m2);
  CHECK(out.str() == "step,time,m1,m2\n0,0,0.5,0.125\n1,0.1,0.25,0\n");

  MetricSeries s1, s2;
  s1.values = {1.0};
  s2.values = {2.0};
  std::ostringstream cmp;
  write_compare_csv(cmp, {{"orca", m1, m2}, {"follower", s1, s2}});
  CHECK(cmp.str() ==
        "model,step,time,m1,m2\n"
        "orca,0,0,0.5,0.125\norca,1,0.1,0.25,0\n"
        "follower,0,0,1,2\nfollower,1,0.1,0,0\n");
}

TEST_CASE("bench csv") {
  std::ostringstream out;
  write_bench_csv(out, {{100, Model::orca, 0.002, 0.0001, 40}});
  CHECK(out.str() == "agents,model,mean_step_seconds,stddev\n100,orca,0.002,1e-04\n");
}

TEST_CASE("run summary json") {
  const Scenario s = *builtin_scenario("three-agent", 42);
  const SimParams p;
  const TrajectoryLog log = run(s, p);
  const RunSummary sum = summarize("three-agent", log, p);
  CHECK(sum.agents == 3);
  CHECK(sum.steps == static_cast<long>(log.steps()));
  const auto j = summary_to_json(sum);
  CHECK(j["scenario"] == "three-agent");
  CHECK(j["deadlock"] == false);
  CHECK(j["params"]["k_gain"] == 0.6);
  CHECK(j["params"]["model"] == "follower");
  CHECK(j["m2_auc"].get<double>() == sum.m2_auc);

  RunSummary lone = sum;
  lone.min_pair_distance = std::numeric_limits<double>::infinity();
  CHECK(summary_to_json(lone)["min_pair_distance"].is_null());
}

TEST_CASE("svg output is well formed") {
  CHECK(xml_escape("a<b & \"c\">") == "a&lt;b &amp; &quot;c&quot;&gt;");
  CHECK(xml_problem("<svg><g></svg>") != "");

  const Scenario s = *builtin_scenario("three-agent", 42);
  const TrajectoryLog log = run(s, SimParams{});
  const std::string traj = render_trajectories(log.records, {800, 800, 10, 1.0});
  CHECK(xml_problem(traj) == "");
  CHECK(traj.find("<polyline") != std::string::npos);
  CHECK(xml_problem(render_trajectories({})) == "");

  const std::string curves =
      render_curves("M2 <congestion>", {{"orca", {0, 0.1, 0.05}}, {"follower & co", {0, 0.02}}}, 0.1);
  CHECK(xml_problem(curves) == "");
  CHECK(curves.find("&lt;congestion&gt;") != std::string::npos);
  CHECK(xml_problem(render_curves("empty", {}, 0.1)) == "");
}
