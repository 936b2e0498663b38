#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace rtq {

// Strided parallel loop writing into caller-owned slots. The partition is a
// pure function of (n, workers), and callers reduce the slots in index order,
// so results do not depend on scheduling.
template <typename Fn>
void parallel_for(int n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    int w = std::min(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(w));
    for (int t = 0; t < w; ++t)
        pool.emplace_back([&fn, t, n, w]() {
            for (int i = t; i < n; i += w) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace rtq
