#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "follower/geometry.hpp"
#include "follower/state.hpp"

namespace follower {

/// Default layout constants for the built-in scenarios.
inline constexpr double kCircleRadius = 20.0;
inline constexpr double kAsyCirclePerturbation = 0.5;
inline constexpr double kGridSpacing = 1.0;
inline constexpr double kGroupOffset = 15.0;

struct ScenarioAgent {
  Vec2 start;
  Vec2 goal;
  friend bool operator==(const ScenarioAgent &, const ScenarioAgent &) = default;
};

/// Optional per-scenario SimParams overrides; keys match SimParams field names.
struct ParamOverrides {
  std::optional<double> dt;
  std::optional<double> agent_radius;
  std::optional<double> k_gain;
  std::optional<double> neighbor_radius;
  std::optional<double> s_pref;
  std::optional<double> v_max;
  std::optional<double> orca_horizon;
  std::optional<double> orca_neighbor_dist;
  std::optional<int> orca_max_neighbors;
  std::optional<int> t_max;
  std::optional<std::uint64_t> seed;
  std::optional<Model> model;

  SimParams apply(SimParams base) const;
  friend bool operator==(const ParamOverrides &, const ParamOverrides &) = default;
};

struct Scenario {
  std::string name;
  std::vector<ScenarioAgent> agents;
  ParamOverrides overrides;

  friend bool operator==(const Scenario &, const Scenario &) = default;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document: bad JSON, wrong types, unknown or missing keys.
class ScenarioParseError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

/// Two agents start closer than two radii.
class ScenarioOverlapError : public ScenarioError {
 public:
  ScenarioOverlapError(const std::string &msg, std::vector<std::pair<int, int>> pairs)
      : ScenarioError(msg), pairs_(std::move(pairs)) {}
  const std::vector<std::pair<int, int>> &pairs() const { return pairs_; }

 private:
  std::vector<std::pair<int, int>> pairs_;
};

/// n agents evenly spaced on a circle centered at the origin, each heading to
/// its antipode. With perturb > 0 each goal is offset uniformly within a disc
/// of that radius (the asymmetric variant).
Scenario build_circle(int n, double radius, double perturb, std::uint64_t seed,
                      double agent_radius = 0.3);
Scenario build_two_group();
Scenario build_four_group();
Scenario build_three_agent();

/// Circle scaled to n agents with the default arc spacing.
Scenario build_scaled_circle(int n, std::uint64_t seed = 42);

/// Resolves "circle", "asycircle", "2-group", "4-group", "three-agent".
std::optional<Scenario> builtin_scenario(std::string_view name, std::uint64_t seed);
std::vector<std::string> builtin_scenario_names();

/// Starts closer than 2 * agent_radius, as (i, j) with i < j.
std::vector<std::pair<int, int>> overlapping_starts(const Scenario &s, double agent_radius);
/// Throws ScenarioOverlapError if any starts overlap.
void validate_scenario(const Scenario &s, double agent_radius);

Scenario load_scenario(std::string_view text);
/// Parses a JSON object of parameter overrides (the "params" block).
ParamOverrides parse_param_overrides(std::string_view text);
Scenario load_scenario_file(const std::string &path);
std::string serialize_scenario(const Scenario &s);

/// Initial crowd for a scenario: agents at rest at their starts, ids 0..n-1.
CrowdState initial_state(const Scenario &s, const SimParams &params);

/// PCG32 (XSH-RR, 64-bit state, default increment stream). Output stream
/// matches the reference pcg32 generator seeded with pcg32_srandom(seed, 54).
class Pcg32 {
 public:
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 54);
  std::uint32_t next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

}  // namespace follower
