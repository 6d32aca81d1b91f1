#pragma once

#include <utility>
#include <vector>

#include "follower/neighbor_index.hpp"
#include "follower/parallel.hpp"
#include "follower/scenarios.hpp"
#include "follower/state.hpp"

namespace follower {

struct TrajectoryLog {
  CrowdState initial;
  CrowdState final_state;
  std::vector<StepRecord> records;
  /// t_max elapsed with at least one agent short of its goal.
  bool deadlock = false;

  std::size_t steps() const { return records.size(); }
};

/// Grid bucketed for both the heuristic and ORCA neighbor ranges.
NeighborIndex build_neighbor_index(const CrowdState &state, const SimParams &params);

/// One synchronous update: preferred velocities, rotation angles, rotated
/// preferences, ORCA velocities, then x += v * dt for everyone at once.
std::pair<CrowdState, StepRecord> step(const CrowdState &state, const SimParams &params,
                                       Parallelism par = {});

/// Steps until every agent has arrived or t_max steps have run.
TrajectoryLog run(const Scenario &scenario, const SimParams &params, Parallelism par = {});
TrajectoryLog run(CrowdState initial, const SimParams &params, Parallelism par = {});

/// Marks agents within the arrival threshold; true if all have arrived.
bool latch_arrivals(CrowdState &state);

/// Incremental driver used by scripting front ends: agents are added first,
/// then the crowd is stepped. Not thread-safe; each instance is independent.
class Simulator {
 public:
  explicit Simulator(SimParams params = {}, Parallelism par = {});

  /// Returns the sequential id of the new agent. Throws std::logic_error once
  /// stepping has begun or after close(), and ScenarioOverlapError if the
  /// start overlaps an existing agent.
  int add_agent(const Vec2 &start, const Vec2 &goal);
  void step(int n = 1);
  void close();

  bool closed() const { return closed_; }
  bool started() const { return started_; }
  const SimParams &params() const { return params_; }
  const CrowdState &state() const;
  std::vector<Vec2> positions() const;
  std::vector<Vec2> velocities() const;
  /// Rotation angles from the most recent step (zeros before the first).
  std::vector<double> thetas() const;
  const std::vector<StepRecord> &records() const;

 private:
  void check_open() const;

  SimParams params_;
  Parallelism par_;
  CrowdState state_;
  std::vector<StepRecord> records_;
  bool started_ = false;
  bool closed_ = false;
};

}  // namespace follower
