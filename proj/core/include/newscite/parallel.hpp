// parallel.hpp
// Deterministic chunked parallel-for. Workers write into pre-allocated slots
// keyed by index, so results are independent of thread scheduling.

#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace newscite {

inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace newscite
