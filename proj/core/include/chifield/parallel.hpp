#pragma once

// Minimal static-partition parallel loop. Work is split into fixed chunks so
// that any per-chunk output is identical whatever the worker count; callers
// that need a reduction store per-chunk partials and combine them in chunk
// order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace chifield {

inline int effective_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Invoke fn(begin, end) over [0, count) split into chunks of chunk_size.
/// Chunks are handed to workers atomically; fn must only write state owned by
/// its chunk. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for_chunks(std::uint64_t count, std::uint64_t chunk_size, int threads, Fn&& fn) {
  if (count == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const int nthreads = std::min<std::uint64_t>(effective_threads(threads),
                                               (count + chunk_size - 1) / chunk_size);
  if (nthreads <= 1) {
    for (std::uint64_t begin = 0; begin < count; begin += chunk_size)
      fn(begin, std::min(begin + chunk_size, count));
    return;
  }

  std::vector<std::thread> pool;
  std::mutex mu;
  std::uint64_t next = 0;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      std::uint64_t begin;
      {
        std::lock_guard<std::mutex> lk(mu);
        if (next >= count || first_error) return;
        begin = next;
        next += chunk_size;
      }
      try {
        fn(begin, std::min(begin + chunk_size, count));
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace chifield
