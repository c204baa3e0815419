#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fplan {

/// Worker count for data-parallel loops. PLANNER_THREADS overrides; otherwise
/// the hardware concurrency is used, floored at 2 so the parallel execution
/// path is exercised even on single-core machines.
int worker_count();

/// Runs fn(i) for i in [0, n). In parallel mode the index range is split into
/// contiguous chunks, one per worker thread. Callers must write results to
/// disjoint per-index slots; the output is then identical to a serial run.
template <typename Fn>
void parallel_for(std::size_t n, bool parallel, Fn&& fn) {
  const int workers = parallel ? worker_count() : 1;
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / static_cast<std::size_t>(workers);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, &failures, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        failures[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace fplan
