#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace hypertrace::detail {

// Static contiguous partition of [0, n); each index is written by exactly one
// worker, so results do not depend on the worker count.
template <class F>
void parallel_for(std::size_t n, int workers, F&& body) {
  const std::size_t w = static_cast<std::size_t>(std::max(1, workers));
  if (w == 1 || n < 2 * w) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  const std::size_t chunk = (n + w - 1) / w;
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hypertrace::detail
