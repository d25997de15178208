#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace privrand {

// Worker cap: THREADS environment variable, else hardware concurrency.
// Results never depend on the value; grid evaluations write into
// preallocated slots indexed by grid point.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

template <typename F>
void parallel_for(std::size_t n, F&& body) {
  const unsigned budget = thread_budget();
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(budget, n ? n : 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace privrand
