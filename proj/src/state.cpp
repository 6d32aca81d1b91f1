#include "follower/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace follower {

std::string_view to_string(Model m) {
  switch (m) {
    case Model::follower:
      return "follower";
    case Model::orca:
      return "orca";
  }
  return "unknown";
}

std::optional<Model> parse_model(std::string_view text) {
  if (text == "follower") return Model::follower;
  if (text == "orca") return Model::orca;
  return std::nullopt;
}

void SimParams::validate() const {
  auto require = [](bool ok, const char *what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(std::isfinite(dt) && dt > 0.0, "dt must be > 0");
  require(std::isfinite(agent_radius) && agent_radius > 0.0, "agent_radius must be > 0");
  require(std::isfinite(k_gain) && k_gain >= 0.0, "k_gain must be >= 0");
  require(std::isfinite(neighbor_radius) && neighbor_radius > 0.0,
          "neighbor_radius must be > 0");
  require(std::isfinite(s_pref) && s_pref > 0.0, "s_pref must be > 0");
  require(std::isfinite(v_max) && v_max >= s_pref, "v_max must be >= s_pref");
  require(std::isfinite(orca_horizon) && orca_horizon > 0.0, "orca_horizon must be > 0");
  require(std::isfinite(orca_neighbor_dist) && orca_neighbor_dist > 0.0,
          "orca_neighbor_dist must be > 0");
  require(orca_max_neighbors >= 0, "orca_max_neighbors must be >= 0");
  require(t_max >= 0, "t_max must be >= 0");
}

std::vector<Vec2> preferred_velocities(CrowdState &state, const SimParams &params) {
  std::vector<Vec2> prefs(state.agents.size());
  for (std::size_t i = 0; i < state.agents.size(); ++i) {
    AgentState &a = state.agents[i];
    const Vec2 to_goal = a.goal - a.position;
    const double dist = norm(to_goal);
    if (a.arrived || dist <= kArrivalThreshold) {
      a.arrived = true;
      continue;
    }
    const double speed = std::min(params.s_pref, dist / params.dt);
    prefs[i] = to_goal * (speed / dist);
  }
  return prefs;
}

}  // namespace follower
