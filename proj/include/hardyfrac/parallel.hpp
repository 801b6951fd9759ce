#pragma once

// Fixed-partition parallel loop. Every index is handled by exactly one task
// and writes only its own output slot, so results do not depend on the
// thread count. HARDYFRAC_THREADS caps the number of worker threads.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hardyfrac {

namespace detail {
inline int& thread_override() {
  static thread_local int n = 0;
  return n;
}
}  // namespace detail

/// Worker count: a ScopedThreads override, else HARDYFRAC_THREADS, else the
/// hardware concurrency.
inline int thread_count() {
  if (detail::thread_override() > 0) return detail::thread_override();
  if (const char* env = std::getenv("HARDYFRAC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 256L));
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

/// Overrides the worker count on the calling thread for its lifetime.
class ScopedThreads {
public:
  explicit ScopedThreads(int n) : saved_(detail::thread_override()) { detail::thread_override() = std::max(1, n); }
  ~ScopedThreads() { detail::thread_override() = saved_; }
  ScopedThreads(const ScopedThreads&) = delete;
  ScopedThreads& operator=(const ScopedThreads&) = delete;

private:
  int saved_;
};

/// Calls f(i) for i in [0, n). Indices are dealt round-robin to the workers;
/// the first exception thrown (lowest index) is rethrown on the caller.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const auto workers = static_cast<std::size_t>(std::min<long>(thread_count(), static_cast<long>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::mutex m;
  std::size_t failed_at = n;
  std::exception_ptr error;
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (i < failed_at) {
          failed_at = i;
          error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hardyfrac
