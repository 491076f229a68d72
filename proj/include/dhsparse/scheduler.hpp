#pragma once

// Execution policy for batch operations.  The parallel policy is only
// applied to phases whose work items touch disjoint state; results are
// merged in a canonical order afterwards, so both policies produce
// bit-identical outcomes.

#include <cstddef>
#include <thread>
#include <vector>

namespace dhsparse {

enum class Scheduler { Sequential, Parallel };

template <typename Fn>
void parallel_for(Scheduler sched, std::size_t count, Fn&& fn) {
  if (count == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  if (sched == Scheduler::Sequential || hw <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t workers = hw < 8 ? hw : 8;
  if (workers > count) workers = count;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      // Contiguous chunks; item i is processed by exactly one worker.
      std::size_t lo = count * w / workers;
      std::size_t hi = count * (w + 1) / workers;
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dhsparse
