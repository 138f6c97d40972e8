// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <cstddef>
#include <functional>

namespace rhlab {

// Worker count taken from the RHLAB_THREADS environment variable (default 1,
// clamped to [1, 64]). All parallel loops write disjoint ranges, so results
// are bit-identical for any setting.
int thread_count();

// Runs fn(begin, end) over a partition of [0, n). Falls back to a single
// inline call when the count is 1 or the range is small.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace rhlab
