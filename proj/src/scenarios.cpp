#include "follower/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace follower {

using nlohmann::json;
using nlohmann::ordered_json;

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream) : inc_((stream << 1U) | 1U) {
  next();
  state_ += seed;
  next();
}

std::uint32_t Pcg32::next() {
  const std::uint64_t old = state_;
  state_ = old * 6364136223846793005ULL + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18U) ^ old) >> 27U);
  const auto rot = static_cast<std::uint32_t>(old >> 59U);
  return (xorshifted >> rot) | (xorshifted << ((~rot + 1U) & 31U));
}

double Pcg32::uniform() {
  const std::uint64_t hi = next();
  const std::uint64_t lo = next();
  const std::uint64_t bits = ((hi << 32U) | lo) >> 11U;
  return static_cast<double>(bits) * 0x1.0p-53;
}

SimParams ParamOverrides::apply(SimParams p) const {
  if (dt) p.dt = *dt;
  if (agent_radius) p.agent_radius = *agent_radius;
  if (k_gain) p.k_gain = *k_gain;
  if (neighbor_radius) p.neighbor_radius = *neighbor_radius;
  if (s_pref) p.s_pref = *s_pref;
  if (v_max) p.v_max = *v_max;
  if (orca_horizon) p.orca_horizon = *orca_horizon;
  if (orca_neighbor_dist) p.orca_neighbor_dist = *orca_neighbor_dist;
  if (orca_max_neighbors) p.orca_max_neighbors = *orca_max_neighbors;
  if (t_max) p.t_max = *t_max;
  if (seed) p.seed = *seed;
  if (model) p.model = *model;
  return p;
}

Scenario build_circle(int n, double radius, double perturb, std::uint64_t seed,
                      double agent_radius) {
  if (n < 1) throw std::invalid_argument("build_circle: n must be >= 1");
  if (!(radius > 0.0) || n * 2.0 * agent_radius >= 2.0 * std::numbers::pi * radius) {
    throw std::invalid_argument("build_circle: radius too small to place agents without overlap");
  }
  Scenario s;
  s.name = perturb > 0.0 ? "asycircle" : "circle";
  s.agents.reserve(static_cast<std::size_t>(n));
  Pcg32 rng(seed);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    const Vec2 start{radius * std::cos(angle), radius * std::sin(angle)};
    Vec2 goal = -start;
    if (perturb > 0.0) {
      const double r = perturb * std::sqrt(rng.uniform());
      const double a = 2.0 * std::numbers::pi * rng.uniform();
      goal += Vec2{r * std::cos(a), r * std::sin(a)};
    }
    s.agents.push_back({start, goal});
  }
  return s;
}

namespace {

// cols x rows grid with the given spacing, centered on `center`, row-major.
std::vector<Vec2> grid(Vec2 center, int cols, int rows, double spacing) {
  std::vector<Vec2> out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out.push_back(center + Vec2{(c - 0.5 * (cols - 1)) * spacing, (r - 0.5 * (rows - 1)) * spacing});
    }
  }
  return out;
}

}  // namespace

Scenario build_two_group() {
  Scenario s;
  s.name = "2-group";
  for (const Vec2 center : {Vec2{-kGroupOffset, 0.0}, Vec2{kGroupOffset, 0.0}}) {
    for (const Vec2 &p : grid(center, 4, 5, kGridSpacing)) s.agents.push_back({p, {-p.x, p.y}});
  }
  return s;
}

Scenario build_four_group() {
  Scenario s;
  s.name = "4-group";
  for (const Vec2 center : {Vec2{kGroupOffset, 0.0}, Vec2{0.0, kGroupOffset},
                            Vec2{-kGroupOffset, 0.0}, Vec2{0.0, -kGroupOffset}}) {
    for (const Vec2 &p : grid(center, 5, 5, kGridSpacing)) s.agents.push_back({p, -p});
  }
  return s;
}

Scenario build_three_agent() {
  Scenario s;
  s.name = "three-agent";
  for (const Vec2 start : {Vec2{-6.0, 0.0}, Vec2{6.0, 0.5}, Vec2{6.0, -0.5}}) {
    s.agents.push_back({start, {-start.x, start.y}});
  }
  return s;
}

Scenario build_scaled_circle(int n, std::uint64_t seed) {
  const double radius = std::max(kCircleRadius, kCircleRadius * n / 100.0);
  Scenario s = build_circle(n, radius, 0.0, seed);
  s.name = "circle-" + std::to_string(n);
  return s;
}

std::vector<std::string> builtin_scenario_names() {
  return {"circle", "asycircle", "2-group", "4-group", "three-agent"};
}

std::optional<Scenario> builtin_scenario(std::string_view name, std::uint64_t seed) {
  if (name == "circle") return build_circle(100, kCircleRadius, 0.0, seed);
  if (name == "asycircle") return build_circle(100, kCircleRadius, kAsyCirclePerturbation, seed);
  if (name == "2-group") return build_two_group();
  if (name == "4-group") return build_four_group();
  if (name == "three-agent") return build_three_agent();
  return std::nullopt;
}

std::vector<std::pair<int, int>> overlapping_starts(const Scenario &s, double agent_radius) {
  std::vector<std::pair<int, int>> out;
  const double min_sq = 4.0 * agent_radius * agent_radius;
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    for (std::size_t j = i + 1; j < s.agents.size(); ++j) {
      if (norm_sq(s.agents[i].start - s.agents[j].start) < min_sq) {
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return out;
}

void validate_scenario(const Scenario &s, double agent_radius) {
  auto pairs = overlapping_starts(s, agent_radius);
  if (pairs.empty()) return;
  std::ostringstream msg;
  msg << "scenario '" << s.name << "': overlapping agent starts:";
  for (const auto &[i, j] : pairs) msg << " (" << i << ", " << j << ")";
  throw ScenarioOverlapError(msg.str(), std::move(pairs));
}

namespace {

[[noreturn]] void fail(const std::string &where, const std::string &what) {
  throw ScenarioParseError(where + ": " + what);
}

double number_at(const json &j, const std::string &where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

int integer_at(const json &j, const std::string &where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Vec2 point_at(const json &j, const std::string &where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [x, y]");
  return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

ParamOverrides parse_overrides(const json &j) {
  if (!j.is_object()) fail("params", "expected an object");
  ParamOverrides o;
  for (const auto &[key, value] : j.items()) {
    const std::string where = "params." + key;
    if (key == "dt") o.dt = number_at(value, where);
    else if (key == "agent_radius") o.agent_radius = number_at(value, where);
    else if (key == "k_gain") o.k_gain = number_at(value, where);
    else if (key == "neighbor_radius") o.neighbor_radius = number_at(value, where);
    else if (key == "s_pref") o.s_pref = number_at(value, where);
    else if (key == "v_max") o.v_max = number_at(value, where);
    else if (key == "orca_horizon") o.orca_horizon = number_at(value, where);
    else if (key == "orca_neighbor_dist") o.orca_neighbor_dist = number_at(value, where);
    else if (key == "orca_max_neighbors") o.orca_max_neighbors = integer_at(value, where);
    else if (key == "t_max") o.t_max = integer_at(value, where);
    else if (key == "seed") {
      if (!value.is_number_unsigned()) fail(where, "expected a non-negative integer");
      o.seed = value.get<std::uint64_t>();
    } else if (key == "model") {
      if (!value.is_string()) fail(where, "expected \"orca\" or \"follower\"");
      auto m = parse_model(value.get<std::string>());
      if (!m) fail(where, "expected \"orca\" or \"follower\"");
      o.model = *m;
    } else {
      fail(where, "unknown key");
    }
  }
  return o;
}

ordered_json overrides_to_json(const ParamOverrides &o) {
  ordered_json j = ordered_json::object();
  if (o.dt) j["dt"] = *o.dt;
  if (o.agent_radius) j["agent_radius"] = *o.agent_radius;
  if (o.k_gain) j["k_gain"] = *o.k_gain;
  if (o.neighbor_radius) j["neighbor_radius"] = *o.neighbor_radius;
  if (o.s_pref) j["s_pref"] = *o.s_pref;
  if (o.v_max) j["v_max"] = *o.v_max;
  if (o.orca_horizon) j["orca_horizon"] = *o.orca_horizon;
  if (o.orca_neighbor_dist) j["orca_neighbor_dist"] = *o.orca_neighbor_dist;
  if (o.orca_max_neighbors) j["orca_max_neighbors"] = *o.orca_max_neighbors;
  if (o.t_max) j["t_max"] = *o.t_max;
  if (o.seed) j["seed"] = *o.seed;
  if (o.model) j["model"] = std::string(to_string(*o.model));
  return j;
}

}  // namespace

Scenario load_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    // Translate the byte offset into a line number for the diagnostic.
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw ScenarioParseError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");

  Scenario s;
  bool has_agents = false;
  for (const auto &[key, value] : doc.items()) {
    if (key == "name") {
      if (!value.is_string()) fail("name", "expected a string");
      s.name = value.get<std::string>();
    } else if (key == "params") {
      s.overrides = parse_overrides(value);
    } else if (key == "agents") {
      has_agents = true;
      if (!value.is_array()) fail("agents", "expected an array");
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string where = "agents[" + std::to_string(i) + "]";
        const json &a = value[i];
        if (!a.is_object()) fail(where, "expected an object");
        for (const auto &[k, v] : a.items()) {
          if (k != "start" && k != "goal") fail(where + "." + k, "unknown key");
        }
        if (!a.contains("start")) fail(where + ".start", "missing");
        if (!a.contains("goal")) fail(where + ".goal", "missing");
        s.agents.push_back({point_at(a["start"], where + ".start"), point_at(a["goal"], where + ".goal")});
      }
    } else {
      fail(key, "unknown key");
    }
  }
  if (!has_agents) fail("agents", "missing");
  if (s.agents.empty()) fail("agents", "at least one agent required");

  const SimParams resolved = s.overrides.apply({});
  try {
    resolved.validate();
  } catch (const std::invalid_argument &e) {
    fail("params", e.what());
  }
  validate_scenario(s, resolved.agent_radius);
  return s;
}

ParamOverrides parse_param_overrides(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw ScenarioParseError(std::string("params: ") + e.what());
  }
  return parse_overrides(doc);
}

Scenario load_scenario_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario &s) {
  ordered_json doc;
  doc["name"] = s.name;
  doc["params"] = overrides_to_json(s.overrides);
  ordered_json agents = ordered_json::array();
  for (const auto &a : s.agents) {
    agents.push_back({{"start", {a.start.x, a.start.y}}, {"goal", {a.goal.x, a.goal.y}}});
  }
  doc["agents"] = std::move(agents);
  return doc.dump(2) + "\n";
}

CrowdState initial_state(const Scenario &s, const SimParams &params) {
  CrowdState state;
  state.agents.reserve(s.agents.size());
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    AgentState a;
    a.id = static_cast<int>(i);
    a.position = s.agents[i].start;
    a.goal = s.agents[i].goal;
    a.radius = params.agent_radius;
    state.agents.push_back(a);
  }
  return state;
}

}  // namespace follower
