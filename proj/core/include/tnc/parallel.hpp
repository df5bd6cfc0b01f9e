#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace tnc {

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Callers write
/// into per-index slots so results do not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::size_t>(count, 1024))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace tnc
