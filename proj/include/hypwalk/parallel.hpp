#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hypwalk {

/// Worker count: HYPWALK_WORKERS if set, else the hardware concurrency.
inline int default_workers() {
    if (const char* env = std::getenv("HYPWALK_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(trial) for trial in [0, trials) across a worker pool. Results land
/// in a slot indexed by trial, so the outcome is independent of scheduling.
template <class T, class Fn>
std::vector<T> parallel_trials(int trials, Fn&& fn, int workers = default_workers()) {
    std::vector<T> out(static_cast<std::size_t>(trials));
    if (workers <= 1 || trials <= 1) {
        for (int i = 0; i < trials; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::atomic<int> next{0};
    auto body = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= trials) return;
            out[static_cast<std::size_t>(i)] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min(workers, trials);
    pool.reserve(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    return out;
}

} // namespace hypwalk
