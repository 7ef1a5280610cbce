#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace wigner_lab {

namespace detail {
inline std::atomic<int>& thread_override() {
  static std::atomic<int> value{-1};
  return value;
}
}  // namespace detail

/// Worker cap. Reads WIGNER_LAB_THREADS (0 = hardware concurrency) unless
/// set_thread_count() was called.
inline std::size_t thread_count() {
  int requested = detail::thread_override().load();
  if (requested < 0) {
    requested = 0;
    if (const char* env = std::getenv("WIGNER_LAB_THREADS")) {
      try {
        requested = std::max(0, std::stoi(env));
      } catch (...) {
        requested = 0;
      }
    }
  }
  if (requested == 0) {
    requested = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  return static_cast<std::size_t>(requested);
}

inline void set_thread_count(int count) { detail::thread_override().store(count); }

/// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
/// so results written per index are independent of the thread count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace wigner_lab
