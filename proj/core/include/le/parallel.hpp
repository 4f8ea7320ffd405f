// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>

namespace le {

/// Worker count: LE_THREADS if set and > 0, otherwise hardware
/// concurrency. LE_THREADS=0 also means auto.
unsigned worker_count();

/// Run fn(i) for i in [0, count) across workers. Static block
/// partition; fn must only touch state owned by index i, so results are
/// independent of scheduling. Falls back to a serial loop for small
/// counts or single-worker configurations.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace le
