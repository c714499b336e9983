#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace uiap {

/// Worker count: explicit argument, else UIAP_THREADS, else hardware.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UIAP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, count) on a pool of workers. Each index writes its
/// own output slot, so results are identical to the sequential order; callers
/// reduce in index order for bit-stable totals.
inline void parallel_for_index(int count, const std::function<void(int)>& fn, int threads = 0) {
  const int workers = std::min(resolve_threads(threads), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

} // namespace uiap
