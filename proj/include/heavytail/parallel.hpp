#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace heavytail {

// Runs body(0..count-1) on a small worker pool. Work items must be
// independent; results must be written to per-index slots so the outcome is
// identical for any worker count. threads <= 0 means hardware concurrency.
inline void parallel_for(long count, const std::function<void(long)>& body, int threads = 0) {
  if (count <= 0) return;
  long nt = threads > 0 ? threads : static_cast<long>(std::thread::hardware_concurrency());
  if (nt < 1) nt = 1;
  nt = std::min(nt, count);
  if (nt == 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nt));
  for (long t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      try {
        for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace heavytail
