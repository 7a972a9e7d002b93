#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hftail {

// Index-parallel loop. Bodies must write only to their own output slot so the
// result is independent of scheduling and worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         unsigned workers = 0) {
  if (n == 0) return;
  unsigned k = workers ? workers : std::thread::hardware_concurrency();
  if (k == 0) k = 1;
  if (k > n) k = static_cast<unsigned>(n);
  if (k == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mtx;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mtx);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hftail
