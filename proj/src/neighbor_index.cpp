#include "follower/neighbor_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace follower {

NeighborIndex::NeighborIndex(std::span<const Vec2> positions, double cell_size)
    : NeighborIndex(positions, cell_size, {}) {}

NeighborIndex::NeighborIndex(std::span<const Vec2> positions, double cell_size,
                             std::span<const std::uint8_t> include)
    : positions_(positions.begin(), positions.end()), cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw std::invalid_argument("NeighborIndex: cell size must be positive");
  }
  if (!include.empty() && include.size() != positions_.size()) {
    throw std::invalid_argument("NeighborIndex: include mask size mismatch");
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!include.empty() && include[i] == 0) continue;
    const Vec2 &p = positions_[i];
    cells_[key(cell_of(p.x), cell_of(p.y))].push_back(static_cast<int>(i));
  }
}

std::uint64_t NeighborIndex::key(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(cx) << 32) ^
         (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
}

std::int64_t NeighborIndex::cell_of(double coord) const {
  return static_cast<std::int64_t>(std::floor(coord / cell_size_));
}

std::vector<int> NeighborIndex::neighbors_within(int i, double radius) const {
  return query(position(i), radius, i);
}

std::vector<int> NeighborIndex::query(const Vec2 &center, double radius, int exclude) const {
  std::vector<int> out;
  if (positions_.empty() || radius < 0.0) return out;
  const double r_sq = radius * radius;
  const std::int64_t x0 = cell_of(center.x - radius);
  const std::int64_t x1 = cell_of(center.x + radius);
  const std::int64_t y0 = cell_of(center.y - radius);
  const std::int64_t y1 = cell_of(center.y + radius);
  for (std::int64_t cx = x0; cx <= x1; ++cx) {
    for (std::int64_t cy = y0; cy <= y1; ++cy) {
      const auto it = cells_.find(key(cx, cy));
      if (it == cells_.end()) continue;
      for (int j : it->second) {
        if (j == exclude) continue;
        if (norm_sq(positions_[static_cast<std::size_t>(j)] - center) <= r_sq) out.push_back(j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace follower
