#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace covplan {

// Worker cap: COVERAGE_PLANNER_THREADS when set, otherwise hardware cores.
inline int thread_cap() {
  if (const char* env = std::getenv("COVERAGE_PLANNER_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static chunking over [0, n); f(i) must be safe to run concurrently for
// distinct i. Results should be written into pre-sized per-index slots so the
// outcome is independent of the thread count.
template <class F>
void parallel_for(int n, F f) {
  const int workers = std::min(thread_cap(), std::max(n, 1));
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=]() {
      for (int i = w; i < n; i += workers) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace covplan
