#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "follower/geometry.hpp"

namespace follower {

/// Uniform bucket grid over a fixed set of positions. Queries are exact
/// (distance <= radius) and return indices in ascending order.
class NeighborIndex {
 public:
  NeighborIndex() = default;
  NeighborIndex(std::span<const Vec2> positions, double cell_size);
  /// Only entries with include[i] != 0 are returned by queries; every index
  /// may still be used as a query origin.
  NeighborIndex(std::span<const Vec2> positions, double cell_size,
                std::span<const std::uint8_t> include);

  /// All j != i with |x_j - x_i| <= radius, ascending.
  std::vector<int> neighbors_within(int i, double radius) const;

  /// All j != exclude with |x_j - center| <= radius, ascending. Pass
  /// exclude = -1 to keep everything.
  std::vector<int> query(const Vec2 &center, double radius, int exclude = -1) const;

  std::size_t size() const { return positions_.size(); }
  double cell_size() const { return cell_size_; }
  const Vec2 &position(int i) const { return positions_[static_cast<std::size_t>(i)]; }

 private:
  static std::uint64_t key(std::int64_t cx, std::int64_t cy);
  std::int64_t cell_of(double coord) const;

  std::vector<Vec2> positions_;
  double cell_size_ = 1.0;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

}  // namespace follower
