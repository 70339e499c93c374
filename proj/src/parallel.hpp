#ifndef ZHUKIT_SRC_PARALLEL_HPP
#define ZHUKIT_SRC_PARALLEL_HPP

#include <zhukit/voa.hpp>

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zhukit::detail {

/// Runs fn(i) for i in [0, n) on up to worker_count() threads.  Callers
/// write results into per-index slots, so output order never depends on
/// scheduling.  The first exception thrown by any task is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n == 0 ? 1 : n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace zhukit::detail

#endif  // ZHUKIT_SRC_PARALLEL_HPP
