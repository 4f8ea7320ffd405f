// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace le {

unsigned worker_count() {
  if (const char* env = std::getenv("LE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  const unsigned workers = worker_count();
  if (workers <= 1 || count < 256) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::int64_t chunks = static_cast<std::int64_t>(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::int64_t w = 0; w < chunks; ++w) {
    const std::int64_t lo = count * w / chunks;
    const std::int64_t hi = count * (w + 1) / chunks;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace le
