#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sod {

namespace detail {
inline std::atomic<unsigned>& max_threads_slot() {
  static std::atomic<unsigned> slot{1};
  return slot;
}
}  // namespace detail

/// Caps the worker count used by library kernels (default 1).
inline void set_max_threads(unsigned n) { detail::max_threads_slot() = std::max(1u, n); }
inline unsigned max_threads() { return detail::max_threads_slot(); }

/// Runs fn(i) for i in [0, n) on up to max_threads() workers.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(max_threads(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!err) err = std::current_exception();
        next = n;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace sod
