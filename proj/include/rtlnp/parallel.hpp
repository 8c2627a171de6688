#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rtlnp {

// workers <= 0 means "use the hardware concurrency".
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [begin, end) over static contiguous chunks. Callers must
// write results to disjoint slots; the output is then identical for any worker
// count. If several iterations throw, the exception of the smallest index is
// rethrown.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, int workers, Fn&& fn) {
  const std::int64_t n = end - begin;
  if (n <= 0) return;
  workers = static_cast<int>(std::min<std::int64_t>(std::max(workers, 1), n));
  if (workers == 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }

  std::mutex mu;
  std::exception_ptr first_error;
  std::int64_t first_error_index = end;
  const std::int64_t chunk = (n + workers - 1) / workers;

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = begin + static_cast<std::int64_t>(w) * chunk;
    const std::int64_t hi = std::min(end, lo + chunk);
    pool.emplace_back([&, lo, hi] {
      for (std::int64_t i = lo; i < hi; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (i < first_error_index) {
            first_error_index = i;
            first_error = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rtlnp
