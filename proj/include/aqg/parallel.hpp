#pragma once

// Parallel sweep over index ranges. Worker count is bounded by the
// QG_THREADS environment variable; results are merged deterministically
// (earliest index wins), so reports are independent of thread count.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace aqg {

inline unsigned worker_count() {
  if (const char* env = std::getenv("QG_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs eval(i) for i in [0, n); returns the failure with the smallest index,
// if any. eval must be pure. Exceptions are captured and reported as a
// failure at the throwing index.
template <class Eval>
std::optional<std::pair<std::size_t, std::string>> sweep_first_failure(std::size_t n,
                                                                       Eval&& eval) {
  unsigned workers = worker_count();
  if (n == 0) return std::nullopt;
  if (workers <= 1 || n < 256) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        if (auto ce = eval(i)) return std::make_pair(i, *ce);
      } catch (const std::exception& ex) {
        return std::make_pair(i, std::string("exception: ") + ex.what());
      }
    }
    return std::nullopt;
  }

  std::atomic<std::size_t> best_idx{n};
  std::mutex best_mtx;
  std::string best_msg;
  std::atomic<std::size_t> next{0};
  const std::size_t chunk = std::max<std::size_t>(64, n / (workers * 16));

  auto body = [&]() {
    for (;;) {
      std::size_t start = next.fetch_add(chunk);
      if (start >= n) return;
      std::size_t end = std::min(n, start + chunk);
      if (start >= best_idx.load(std::memory_order_relaxed)) continue;
      for (std::size_t i = start; i < end; ++i) {
        if (i >= best_idx.load(std::memory_order_relaxed)) break;
        std::optional<std::string> ce;
        try {
          ce = eval(i);
        } catch (const std::exception& ex) {
          ce = std::string("exception: ") + ex.what();
        }
        if (ce) {
          std::lock_guard<std::mutex> lock(best_mtx);
          if (i < best_idx.load()) {
            best_idx.store(i);
            best_msg = *ce;
          }
          break;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();

  if (best_idx.load() < n) return std::make_pair(best_idx.load(), best_msg);
  return std::nullopt;
}

}  // namespace aqg
