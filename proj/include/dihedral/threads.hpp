#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace dihedral {

// Parallelism cap: DIHEDRAL_FORGE_THREADS when set, else the hardware count.
inline int thread_cap() {
  if (const char* env = std::getenv("DIHEDRAL_FORGE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Deterministic chunked parallel loop: fn(i) for i in [0, n). Results must be
// written to per-index slots; the chunking never affects values.
template <typename F>
void parallel_for(int n, F&& fn) {
  const int k = std::min(thread_cap(), n);
  if (k <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(k);
  std::exception_ptr first_error = nullptr;
  std::mutex err_mutex;
  for (int t = 0; t < k; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < n; i += k) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dihedral
