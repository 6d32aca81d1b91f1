#include "follower/orca.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

namespace follower {
namespace {

constexpr double kParallelEps = 1e-12;
constexpr double kCoincident = 1e-6;

// Line form used by the LP: boundary point plus unit direction, permitted
// side to the left.
struct Line {
  Vec2 point;
  Vec2 direction;
};

// 1D program along line `index`, clipped by the speed disc and lines [0, index).
bool solve_on_line(std::span<const Line> lines, std::size_t index, double radius,
                   const Vec2 &opt, bool direction_opt, Vec2 &result) {
  const Line &line = lines[index];
  const double dot_product = dot(line.point, line.direction);
  const double discriminant = dot_product * dot_product + radius * radius - norm_sq(line.point);
  if (discriminant < 0.0) return false;

  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dot_product - sqrt_disc;
  double t_right = -dot_product + sqrt_disc;

  for (std::size_t i = 0; i < index; ++i) {
    const double denominator = cross2(line.direction, lines[i].direction);
    const double numerator = cross2(lines[i].direction, line.point - lines[i].point);
    if (std::fabs(denominator) <= kParallelEps) {
      if (numerator < 0.0) return false;
      continue;
    }
    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    result = line.point + (dot(opt, line.direction) > 0.0 ? t_right : t_left) * line.direction;
  } else {
    const double t = std::clamp(dot(line.direction, opt - line.point), t_left, t_right);
    result = line.point + t * line.direction;
  }
  return true;
}

// Incremental 2D program. Returns the index of the first line it could not
// satisfy, or lines.size() on success.
std::size_t solve_planar(std::span<const Line> lines, double radius, const Vec2 &opt,
                         bool direction_opt, Vec2 &result) {
  if (direction_opt) {
    result = opt * radius;
  } else if (norm_sq(opt) > radius * radius) {
    result = normalized(opt) * radius;
  } else {
    result = opt;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (cross2(lines[i].direction, lines[i].point - result) > 0.0) {
      const Vec2 previous = result;
      if (!solve_on_line(lines, i, radius, opt, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

// Infeasible case: minimize the maximum violation by solving a lifted program
// over lines [begin, end), each projected onto the bisectors with line i.
void solve_least_violation(std::span<const Line> lines, std::size_t begin, double radius,
                           Vec2 &result) {
  double distance = 0.0;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    if (cross2(lines[i].direction, lines[i].point - result) <= distance) continue;

    std::vector<Line> projected;
    projected.reserve(i);
    for (std::size_t j = 0; j < i; ++j) {
      Line bisector;
      const double determinant = cross2(lines[i].direction, lines[j].direction);
      if (std::fabs(determinant) <= kParallelEps) {
        if (dot(lines[i].direction, lines[j].direction) > 0.0) continue;
        bisector.point = 0.5 * (lines[i].point + lines[j].point);
      } else {
        bisector.point =
            lines[i].point +
            (cross2(lines[j].direction, lines[i].point - lines[j].point) / determinant) *
                lines[i].direction;
      }
      bisector.direction = normalized(lines[j].direction - lines[i].direction);
      projected.push_back(bisector);
    }

    const Vec2 previous = result;
    if (solve_planar(projected, radius, perp(lines[i].direction), true, result) <
        projected.size()) {
      // Only reachable through round-off; keep the last good point.
      result = previous;
    }
    distance = cross2(lines[i].direction, lines[i].point - result);
  }
}

}  // namespace

HalfPlane orca_halfplane(const AgentState &agent_i, const AgentState &agent_j, double horizon,
                         double dt) {
  const Vec2 rel_pos = agent_j.position - agent_i.position;
  const Vec2 rel_vel = agent_i.velocity - agent_j.velocity;
  const double dist_sq = norm_sq(rel_pos);
  const double combined = agent_i.radius + agent_j.radius;
  const double combined_sq = combined * combined;

  Vec2 normal;
  Vec2 u;
  if (dist_sq > combined_sq) {
    const double inv_horizon = 1.0 / horizon;
    // From the cutoff disc center to the relative velocity.
    const Vec2 w = rel_vel - inv_horizon * rel_pos;
    const double w_len_sq = norm_sq(w);
    const double w_dot_p = dot(w, rel_pos);

    if (w_dot_p < 0.0 && w_dot_p * w_dot_p > combined_sq * w_len_sq) {
      // Closest boundary point lies on the cutoff arc.
      const double w_len = std::sqrt(w_len_sq);
      normal = w / w_len;
      u = (combined * inv_horizon - w_len) * normal;
    } else {
      // Closest boundary point lies on one of the cone legs.
      const double leg = std::sqrt(dist_sq - combined_sq);
      Vec2 direction;
      if (cross2(rel_pos, w) > 0.0) {
        direction = Vec2{rel_pos.x * leg - rel_pos.y * combined,
                         rel_pos.x * combined + rel_pos.y * leg} /
                    dist_sq;
      } else {
        direction = -Vec2{rel_pos.x * leg + rel_pos.y * combined,
                          -rel_pos.x * combined + rel_pos.y * leg} /
                    dist_sq;
      }
      normal = perp(direction);
      u = dot(rel_vel, direction) * direction - rel_vel;
    }
  } else {
    const double inv_dt = 1.0 / dt;
    const Vec2 w = rel_vel - inv_dt * rel_pos;
    const double w_len = norm(w);
    if (dist_sq < kCoincident * kCoincident || w_len <= 0.0) {
      // Coincident discs: fixed axis, opposite for the two members of a pair.
      normal = agent_i.id <= agent_j.id ? Vec2{1.0, 0.0} : Vec2{-1.0, 0.0};
    } else {
      normal = w / w_len;
    }
    u = (combined * inv_dt - w_len) * normal;
  }

  return {agent_i.velocity + 0.5 * u, normal};
}

Vec2 solve_velocity(std::span<const HalfPlane> constraints, const Vec2 &desired, double v_max) {
  assert(v_max > 0.0);
  std::vector<Line> lines;
  lines.reserve(constraints.size());
  for (const HalfPlane &h : constraints) lines.push_back({h.point, h.direction()});

  Vec2 result;
  const std::size_t failed = solve_planar(lines, v_max, desired, false, result);
  if (failed < lines.size()) solve_least_violation(lines, failed, v_max, result);
  if (norm_sq(result) > v_max * v_max) result = v_max * normalized(result);
  return result;
}

std::vector<int> nearest_neighbors(const NeighborIndex &index, int i, double range,
                                   int max_count) {
  if (max_count <= 0) return {};
  return nearest_neighbors(index, i, index.neighbors_within(i, range), range, max_count);
}

std::vector<int> nearest_neighbors(const NeighborIndex &index, int i,
                                   std::span<const int> pool, double range, int max_count) {
  if (max_count <= 0) return {};
  const Vec2 &center = index.position(i);
  const double range_sq = range * range;
  std::vector<std::pair<double, int>> candidates;
  for (int j : pool) {
    if (j == i) continue;
    const double d_sq = norm_sq(index.position(j) - center);
    if (d_sq <= range_sq) candidates.emplace_back(d_sq, j);
  }
  const auto keep = std::min(candidates.size(), static_cast<std::size_t>(max_count));
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end());
  std::vector<int> out;
  out.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) out.push_back(candidates[k].second);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vec2> avoidance_step(const CrowdState &state, std::span<const Vec2> desired,
                                 const SimParams &params, const NeighborIndex &neighbors,
                                 Parallelism par) {
  std::vector<std::vector<int>> candidates(state.agents.size());
  parallel_for(candidates.size(), par, [&](std::size_t i) {
    if (!state.agents[i].arrived) {
      candidates[i] = neighbors.neighbors_within(static_cast<int>(i), params.orca_neighbor_dist);
    }
  });
  return avoidance_step(state, desired, params, neighbors, candidates, par);
}

std::vector<Vec2> avoidance_step(const CrowdState &state, std::span<const Vec2> desired,
                                 const SimParams &params, const NeighborIndex &neighbors,
                                 std::span<const std::vector<int>> candidates,
                                 Parallelism par) {
  assert(desired.size() == state.agents.size());
  assert(candidates.size() == state.agents.size());
  std::vector<Vec2> out(state.agents.size());
  parallel_for(out.size(), par, [&](std::size_t i) {
    const AgentState &me = state.agents[i];
    if (me.arrived) return;
    std::vector<HalfPlane> constraints;
    for (int j : nearest_neighbors(neighbors, static_cast<int>(i), candidates[i],
                                   params.orca_neighbor_dist, params.orca_max_neighbors)) {
      constraints.push_back(orca_halfplane(me, state.agents[static_cast<std::size_t>(j)],
                                           params.orca_horizon, params.dt));
    }
    out[i] = solve_velocity(constraints, desired[i], params.v_max);
  });
  return out;
}

}  // namespace follower
