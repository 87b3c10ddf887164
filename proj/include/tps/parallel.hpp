#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tps {

/// Worker count for per-index decompositions. 0 selects the hardware
/// concurrency. Results never depend on this value: every output slot is
/// written by exactly one task and no reduction crosses task boundaries.
struct Workers {
  unsigned count = 1;

  unsigned resolved() const {
    if (count != 0) return count;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// Calls fn(i) for i in [0, n), splitting the range into contiguous blocks.
template <typename Fn>
void parallel_for(std::size_t n, Workers workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(workers.resolved(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const std::size_t block = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * block;
      const std::size_t end = std::min(n, begin + block);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace tps
