#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace speclab {

/// Applies f to every index in [0, n) and collects the results in index
/// order. Threads pull indices from a shared counter, so the output is a
/// pure function of f and n, independent of scheduling and of `jobs`.
template <typename R, typename F>
std::vector<R> parallel_map(int n, int jobs, F&& f) {
  std::vector<R> out(static_cast<std::size_t>(std::max(n, 0)));
  if (n <= 0) return out;
  jobs = std::clamp(jobs, 1, n);
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) out[i] = f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace speclab
