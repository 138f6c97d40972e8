// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rhlab {

int thread_count() {
    static const int count = [] {
        const char* env = std::getenv("RHLAB_THREADS");
        if (!env) return 1;
        const int v = std::atoi(env);
        return std::clamp(v, 1, 64);
    }();
    return count;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int workers = thread_count();
    if (workers <= 1 || n < 2048) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        const std::size_t b = std::min(n, static_cast<std::size_t>(t) * chunk);
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace rhlab
