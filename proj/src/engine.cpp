#include "follower/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "follower/heuristic.hpp"
#include "follower/orca.hpp"

namespace follower {

NeighborIndex build_neighbor_index(const CrowdState &state, const SimParams &params) {
  std::vector<Vec2> positions;
  std::vector<std::uint8_t> active;
  positions.reserve(state.agents.size());
  active.reserve(state.agents.size());
  for (const auto &a : state.agents) {
    positions.push_back(a.position);
    active.push_back(a.arrived ? 0 : 1);
  }
  return NeighborIndex(positions, std::max(params.neighbor_radius, params.orca_neighbor_dist),
                       active);
}

std::pair<CrowdState, StepRecord> step(const CrowdState &state, const SimParams &params,
                                       Parallelism par) {
  CrowdState next = state;
  StepRecord record;
  record.step = state.step;

  const std::vector<Vec2> prefs = preferred_velocities(next, params);
  const NeighborIndex index = build_neighbor_index(next, params);

  // One range query per agent serves both the heuristic and ORCA.
  const double reach = params.model == Model::follower
                           ? std::max(params.neighbor_radius, params.orca_neighbor_dist)
                           : params.orca_neighbor_dist;
  std::vector<std::vector<int>> candidates(next.agents.size());
  parallel_for(candidates.size(), par, [&](std::size_t i) {
    if (!next.agents[i].arrived) {
      candidates[i] = index.neighbors_within(static_cast<int>(i), reach);
    }
  });

  std::vector<double> thetas(next.agents.size(), 0.0);
  if (params.model == Model::follower) {
    thetas = rotation_angles(next, prefs, params, candidates, par);
  }
  const std::vector<Vec2> rotated = rotated_preferences(prefs, thetas);
  const std::vector<Vec2> velocities =
      avoidance_step(next, rotated, params, index, candidates, par);

  record.agents.resize(next.agents.size());
  for (std::size_t i = 0; i < next.agents.size(); ++i) {
    AgentState &a = next.agents[i];
    const Vec2 v = a.arrived ? Vec2{} : velocities[i];
    record.agents[i] = {a.id, a.position, v, prefs[i], rotated[i], thetas[i], a.arrived};
    a.velocity = v;
    a.position += v * params.dt;
  }
  next.step = state.step + 1;
  next.time = static_cast<double>(next.step) * params.dt;
  return {std::move(next), std::move(record)};
}

bool latch_arrivals(CrowdState &state) {
  bool all = true;
  for (auto &a : state.agents) {
    if (!a.arrived && norm(a.goal - a.position) <= kArrivalThreshold) a.arrived = true;
    all = all && a.arrived;
  }
  return all;
}

TrajectoryLog run(CrowdState initial, const SimParams &params, Parallelism par) {
  params.validate();
  TrajectoryLog log;
  log.initial = initial;
  CrowdState current = std::move(initial);
  bool done = latch_arrivals(current);
  while (!done && current.step < params.t_max) {
    auto [next, record] = step(current, params, par);
    log.records.push_back(std::move(record));
    current = std::move(next);
    done = latch_arrivals(current);
  }
  log.deadlock = !done && !current.agents.empty();
  log.final_state = std::move(current);
  return log;
}

TrajectoryLog run(const Scenario &scenario, const SimParams &params, Parallelism par) {
  if (scenario.agents.empty()) throw std::invalid_argument("run: scenario has no agents");
  return run(initial_state(scenario, params), params, par);
}

Simulator::Simulator(SimParams params, Parallelism par) : params_(params), par_(par) {
  params_.validate();
}

void Simulator::check_open() const {
  if (closed_) throw std::logic_error("simulator has been closed");
}

int Simulator::add_agent(const Vec2 &start, const Vec2 &goal) {
  check_open();
  if (started_) throw std::logic_error("cannot add agents after stepping has started");
  const double min_sq = 4.0 * params_.agent_radius * params_.agent_radius;
  const int id = static_cast<int>(state_.agents.size());
  for (const auto &a : state_.agents) {
    if (norm_sq(a.position - start) < min_sq) {
      throw ScenarioOverlapError("agent start overlaps agent " + std::to_string(a.id),
                                 {{a.id, id}});
    }
  }
  AgentState a;
  a.id = id;
  a.position = start;
  a.goal = goal;
  a.radius = params_.agent_radius;
  state_.agents.push_back(a);
  return id;
}

void Simulator::step(int n) {
  check_open();
  if (n < 1) throw std::invalid_argument("step count must be >= 1");
  started_ = true;
  for (int k = 0; k < n; ++k) {
    auto [next, record] = follower::step(state_, params_, par_);
    state_ = std::move(next);
    records_.push_back(std::move(record));
  }
}

void Simulator::close() { closed_ = true; }

const CrowdState &Simulator::state() const {
  check_open();
  return state_;
}

std::vector<Vec2> Simulator::positions() const {
  check_open();
  std::vector<Vec2> out;
  for (const auto &a : state_.agents) out.push_back(a.position);
  return out;
}

std::vector<Vec2> Simulator::velocities() const {
  check_open();
  std::vector<Vec2> out;
  for (const auto &a : state_.agents) out.push_back(a.velocity);
  return out;
}

std::vector<double> Simulator::thetas() const {
  check_open();
  std::vector<double> out(state_.agents.size(), 0.0);
  if (!records_.empty()) {
    const auto &last = records_.back().agents;
    for (std::size_t i = 0; i < last.size(); ++i) out[i] = last[i].theta;
  }
  return out;
}

const std::vector<StepRecord> &Simulator::records() const {
  check_open();
  return records_;
}

}  // namespace follower
