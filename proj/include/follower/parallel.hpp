#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace follower {

struct Parallelism {
  int threads = 1;
};

/// Runs fn(i) for i in [0, n) over contiguous chunks. fn must only write to
/// slot i.
template <typename Fn>
void parallel_for(std::size_t n, Parallelism par, Fn &&fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(par.threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

}  // namespace follower
