#include "follower/heuristic.hpp"

#include <cassert>
#include <cmath>

namespace follower {

PairInfluence pair_factors(const Vec2 &phi_i, const Vec2 &x_i, const Vec2 &x_j, const Vec2 &v_j,
                           double neighbor_radius) {
  PairInfluence f;
  const Vec2 d = x_j - x_i;
  const double dist = norm(d);
  const double ahead = dot(phi_i, d);
  f.t0 = heaviside(ahead);
  f.t4 = 1 - heaviside(dist - neighbor_radius);
  f.t5 = 2 * heaviside(cross2(phi_i, d)) - 1;
  if (dist < kMinPairDistance || f.t0 == 0 || f.t4 == 0) return f;

  f.t1 = dot(phi_i, v_j);
  f.t2 = ahead / dist;
  f.t3 = 1.0 / dist;
  f.product = f.t1 * f.t2 * f.t3 * static_cast<double>(f.t5);
  return f;
}

double angle_from_influence(double influence_sum, double k_gain) {
  return std::asin(0.5 * std::tanh(k_gain * influence_sum));
}

std::vector<double> rotation_angles(const CrowdState &state, std::span<const Vec2> prefs,
                                    const SimParams &params, const NeighborIndex &neighbors,
                                    Parallelism par) {
  std::vector<std::vector<int>> candidates(state.agents.size());
  parallel_for(candidates.size(), par, [&](std::size_t i) {
    candidates[i] = neighbors.neighbors_within(static_cast<int>(i), params.neighbor_radius);
  });
  return rotation_angles(state, prefs, params, candidates, par);
}

std::vector<double> rotation_angles(const CrowdState &state, std::span<const Vec2> prefs,
                                    const SimParams &params,
                                    std::span<const std::vector<int>> candidates,
                                    Parallelism par) {
  assert(prefs.size() == state.agents.size());
  assert(candidates.size() == state.agents.size());
  std::vector<double> thetas(state.agents.size(), 0.0);
  parallel_for(thetas.size(), par, [&](std::size_t i) {
    const AgentState &me = state.agents[i];
    if (me.arrived) return;
    const Vec2 phi = facing_direction(me, prefs[i]);
    if (norm(phi) < kMinFacing) return;
    double sum = 0.0;
    for (int j : candidates[i]) {
      const AgentState &other = state.agents[static_cast<std::size_t>(j)];
      sum += pair_influence(phi, me.position, other.position, other.velocity,
                            params.neighbor_radius);
    }
    thetas[i] = angle_from_influence(sum, params.k_gain);
  });
  return thetas;
}

std::vector<Vec2> rotated_preferences(std::span<const Vec2> prefs,
                                      std::span<const double> thetas) {
  assert(prefs.size() == thetas.size());
  std::vector<Vec2> out(prefs.size());
  for (std::size_t i = 0; i < prefs.size(); ++i) out[i] = rotate(prefs[i], thetas[i]);
  return out;
}

}  // namespace follower
