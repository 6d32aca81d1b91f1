#pragma once

#include <span>
#include <vector>

#include "follower/geometry.hpp"
#include "follower/neighbor_index.hpp"
#include "follower/parallel.hpp"
#include "follower/state.hpp"

namespace follower {

/// Pairs closer than this are ignored by the rotation heuristic (m).
inline constexpr double kMinPairDistance = 1e-6;
/// Facing directions shorter than this produce no rotation (m/s).
inline constexpr double kMinFacing = 1e-9;

/// The six factors agent j contributes to agent i's rotation, and their product.
///
///   t0  j lies in front of i (phi_i . d > 0)
///   t1  phi_i . v_j, agreement between i's heading and j's velocity
///   t2  phi_i . d / |d|, how directly j sits on i's heading
///   t3  1 / |d|
///   t4  |d| <= L_m
///   t5  +1 when j is to the left of phi_i, -1 otherwise
struct PairInfluence {
  int t0 = 0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  int t4 = 0;
  int t5 = -1;
  double product = 0.0;
};

/// phi_i = v_i + p_i. Deliberately not normalized.
inline Vec2 facing_direction(const AgentState &agent, const Vec2 &pref) {
  return agent.velocity + pref;
}

/// Factor breakdown for the pair (i, j). Degenerate pairs (coincident, out of
/// range, behind) come back with product 0.
PairInfluence pair_factors(const Vec2 &phi_i, const Vec2 &x_i, const Vec2 &x_j, const Vec2 &v_j,
                           double neighbor_radius);

inline double pair_influence(const Vec2 &phi_i, const Vec2 &x_i, const Vec2 &x_j,
                             const Vec2 &v_j, double neighbor_radius) {
  return pair_factors(phi_i, x_i, x_j, v_j, neighbor_radius).product;
}

/// theta = asin(tanh(K * s) / 2) for an influence sum s.
double angle_from_influence(double influence_sum, double k_gain);

/// Rotation angle for every agent. Neighbor sums run over ids in ascending
/// order so the result does not depend on the thread count.
std::vector<double> rotation_angles(const CrowdState &state, std::span<const Vec2> prefs,
                                    const SimParams &params, const NeighborIndex &neighbors,
                                    Parallelism par = {});

/// Same, with candidate neighbor ids (ascending) supplied per agent. Any
/// candidate beyond L_m is masked out, so a superset is fine.
std::vector<double> rotation_angles(const CrowdState &state, std::span<const Vec2> prefs,
                                    const SimParams &params,
                                    std::span<const std::vector<int>> candidates,
                                    Parallelism par = {});

std::vector<Vec2> rotated_preferences(std::span<const Vec2> prefs, std::span<const double> thetas);

}  // namespace follower
