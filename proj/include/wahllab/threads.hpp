#pragma once

// Optional worker pool, sized by the WAHLLAB_THREADS environment variable
// (default 1 = serial).  Work items write to caller-owned slots indexed by i,
// so results are identical regardless of thread count or scheduling.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wahllab {

inline int thread_count() {
  static int n = [] {
    const char* e = std::getenv("WAHLLAB_THREADS");
    if (!e || !*e) return 1;
    int v = std::atoi(e);
    if (v < 1) return 1;
    return v > 64 ? 64 : v;
  }();
  return n;
}

template <class F>
void parallel_for(int n, F&& body) {
  int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (int i; (i = next.fetch_add(1)) < n;) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        next.store(n);  // drain remaining work
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace wahllab
