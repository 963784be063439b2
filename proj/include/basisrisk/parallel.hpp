#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "basisrisk/types.hpp"

namespace basisrisk {

/// Worker count: BASISRISK_THREADS if set and positive, else the hardware
/// concurrency, else 1.
inline int default_thread_count() {
  if (const char* env = std::getenv("BASISRISK_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n). Each index is visited exactly once and the
/// partition into contiguous chunks depends only on (n, threads), so a body
/// that writes to slot i produces identical results for any thread count.
template <typename F>
void parallel_for(Index n, F&& fn, int threads = default_thread_count()) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  const Index workers = std::min<Index>(threads, n);
  const Index chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (Index w = 0; w < workers; ++w) {
    const Index lo = w * chunk;
    const Index hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi] {
      try {
        for (Index i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace basisrisk
