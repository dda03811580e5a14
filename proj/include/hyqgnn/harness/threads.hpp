#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hyqgnn::harness {

/// Worker cap: HYQGNN_THREADS when set (minimum 1), else the hardware
/// concurrency, never more than the number of work items.
inline std::size_t worker_count(std::size_t n_items) {
    std::size_t cap = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HYQGNN_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) cap = static_cast<std::size_t>(parsed);
    }
    return std::max<std::size_t>(1, std::min(cap, n_items));
}

/// Runs fn(i) for i in [0, n) across worker threads in contiguous blocks.
/// Callers write results into per-index slots and reduce sequentially, so
/// outputs are bitwise independent of the thread count.
template <typename F>
inline void parallel_for(std::size_t n, F&& fn) {
    if (n == 0) return;
    const std::size_t workers = worker_count(n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace hyqgnn::harness
