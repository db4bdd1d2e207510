#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dystro {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
// written by index into pre-sized storage, which keeps scan output
// deterministic regardless of scheduling. The first exception wins and is
// rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  threads = std::min({threads, n,
                      static_cast<std::size_t>(
                          std::max(1u, std::thread::hardware_concurrency()))});
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::once_flag error_once;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::call_once(error_once, [&] { error = std::current_exception(); });
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace dystro
