#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace classsieve {

/// Worker count used when a caller passes 0.
inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [begin, end) into chunks of `chunk` indices which `threads` workers
/// claim dynamically. `body(worker, lo, hi)` must only touch state owned by
/// `worker` (an index in [0, threads)); callers merge per-worker results.
/// The first exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallel_chunks(std::int64_t begin, std::int64_t end, std::int64_t chunk, unsigned threads,
                     Body&& body) {
  if (end <= begin) return;
  threads = std::max(1u, threads);
  chunk = std::max<std::int64_t>(1, chunk);
  if (threads == 1) {
    for (std::int64_t lo = begin; lo < end; lo += chunk) body(0u, lo, std::min(end, lo + chunk));
    return;
  }
  std::atomic<std::int64_t> next{begin};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&](unsigned index) {
    try {
      for (;;) {
        const std::int64_t lo = next.fetch_add(chunk);
        if (lo >= end) return;
        body(index, lo, std::min(end, lo + chunk));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(end);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace classsieve
