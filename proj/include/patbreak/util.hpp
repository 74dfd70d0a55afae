#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace patbreak {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline int default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(worker, begin, end) over a partition of [0, total). The caller
// combines per-worker results, so the outcome is schedule-independent.
inline void parallel_ranges(std::uint64_t total, int workers,
                            const std::function<void(int, std::uint64_t, std::uint64_t)>& body) {
  if (workers < 1) workers = 1;
  if (total == 0) return;
  if (workers == 1 || total < 1u << 12) {
    body(0, 0, total);
    return;
  }
  std::vector<std::thread> threads;
  std::uint64_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::uint64_t begin = w * chunk;
    if (begin >= total) break;
    std::uint64_t end = std::min(total, begin + chunk);
    threads.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace patbreak
