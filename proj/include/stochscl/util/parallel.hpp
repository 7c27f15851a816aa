#ifndef STOCHSCL_UTIL_PARALLEL_HPP
#define STOCHSCL_UTIL_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stochscl {

inline int hardware_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

/// Runs fn(i) for i in [0, n) on up to n_threads workers.
///
/// Each index is processed exactly once; workers write only to slots they own,
/// so results land in index order and reductions done afterwards over the
/// output arrays are independent of the worker count and scheduling.
template <typename F>
void parallel_for(long n, int n_threads, F&& fn) {
  if (n <= 0) return;
  n_threads = std::max(1, n_threads);
  if (n_threads == 1 || n == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<long>(n_threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (long i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace stochscl

#endif
