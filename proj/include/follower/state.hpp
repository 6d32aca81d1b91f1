#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "follower/geometry.hpp"

namespace follower {

/// Distance to goal at which an agent counts as arrived (m).
inline constexpr double kArrivalThreshold = 0.1;

enum class Model { follower, orca };

std::string_view to_string(Model m);
std::optional<Model> parse_model(std::string_view text);

/// Simulation parameters. Defaults reproduce the published configuration
/// (dt = 0.1, r = 0.3, K = 0.6, L_m = 10); the remaining substrate values are
/// our own choices for human-scale agents.
struct SimParams {
  double dt = 0.1;
  double agent_radius = 0.3;
  double k_gain = 0.6;
  double neighbor_radius = 10.0;
  double s_pref = 1.5;
  double v_max = 2.0;
  double orca_horizon = 2.0;
  double orca_neighbor_dist = 15.0;
  int orca_max_neighbors = 10;
  int t_max = 3000;
  std::uint64_t seed = 42;
  Model model = Model::follower;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  friend bool operator==(const SimParams &, const SimParams &) = default;
};

struct AgentState {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  Vec2 goal;
  double radius = 0.3;
  bool arrived = false;
};

/// Value snapshot of the whole crowd at one simulation step.
struct CrowdState {
  std::vector<AgentState> agents;
  long step = 0;
  double time = 0.0;

  std::size_t size() const { return agents.size(); }
};

/// Per-agent data logged for one step. `position` is the pre-step position
/// x^t, `velocity` the committed velocity v^{t+1}. Arrived agents have left
/// the scene: they stay in the record at rest so N is constant, but no
/// other agent sees them.
struct AgentRecord {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  Vec2 preferred;
  Vec2 rotated;
  double theta = 0.0;
  bool arrived = false;
};

struct StepRecord {
  long step = 0;
  std::vector<AgentRecord> agents;
};

/// Goal-directed preferred velocities for the snapshot. Also latches the
/// arrival flag on `state` for agents within kArrivalThreshold of their goal.
std::vector<Vec2> preferred_velocities(CrowdState &state, const SimParams &params);

}  // namespace follower
