#pragma once

#include <span>
#include <vector>

#include "follower/geometry.hpp"
#include "follower/neighbor_index.hpp"
#include "follower/parallel.hpp"
#include "follower/state.hpp"

namespace follower {

/// Velocity-space half-plane { v : normal . (v - point) >= 0 }.
struct HalfPlane {
  Vec2 point;
  Vec2 normal;

  /// Unit vector along the boundary with the permitted side on its left.
  Vec2 direction() const { return {normal.y, -normal.x}; }
  /// Signed distance of v into the permitted side (negative = violated).
  double slack(const Vec2 &v) const { return dot(normal, v - point); }
};

/// Reciprocal (half-responsibility) constraint that agent j imposes on
/// agent i. Overlapping pairs resolve penetration within one time step.
HalfPlane orca_halfplane(const AgentState &agent_i, const AgentState &agent_j, double horizon,
                         double dt);

/// Velocity with |v| <= v_max closest to `desired` that satisfies every
/// constraint. Constraints are processed in the given order. When the
/// problem is infeasible, returns the velocity minimizing the largest
/// constraint violation instead.
Vec2 solve_velocity(std::span<const HalfPlane> constraints, const Vec2 &desired, double v_max);

/// Up to `max_count` agents nearest to agent i within `range`, ties broken by
/// id, returned in ascending id order.
std::vector<int> nearest_neighbors(const NeighborIndex &index, int i, double range,
                                   int max_count);
/// Same selection from a precomputed candidate list.
std::vector<int> nearest_neighbors(const NeighborIndex &index, int i,
                                   std::span<const int> candidates, double range,
                                   int max_count);

/// New velocities V^{t+1} for every agent, steering towards `desired`.
std::vector<Vec2> avoidance_step(const CrowdState &state, std::span<const Vec2> desired,
                                 const SimParams &params, const NeighborIndex &neighbors,
                                 Parallelism par = {});

/// Same, with candidate neighbor ids supplied per agent (a superset of the
/// ORCA range is fine).
std::vector<Vec2> avoidance_step(const CrowdState &state, std::span<const Vec2> desired,
                                 const SimParams &params, const NeighborIndex &neighbors,
                                 std::span<const std::vector<int>> candidates,
                                 Parallelism par = {});

}  // namespace follower
