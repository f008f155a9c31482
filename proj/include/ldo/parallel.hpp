#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ldo {

// Runs body(i) for i in [0, count) on up to `threads` workers. Callers write results into
// slot i, so assembly order never depends on scheduling. The first exception is rethrown.
inline void parallel_for(size_t count, unsigned threads, const std::function<void(size_t)>& body) {
  if (threads <= 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned used = static_cast<unsigned>(std::min<size_t>(threads, count));
  for (unsigned t = 0; t < used; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ldo
