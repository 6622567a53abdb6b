#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace uavdet {

/// Runs fn(i) for i in [0, n) split into contiguous chunks, one per worker.
/// Chunk boundaries depend only on (n, threads), so any per-chunk state the
/// caller reduces in chunk order yields results independent of scheduling.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        std::size_t lo = n * t / nt;
        std::size_t hi = n * (t + 1) / nt;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Chunk assignment used by parallel_for, exposed so callers can pre-allocate
/// one accumulator per chunk and reduce them deterministically.
inline std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t n, int threads) {
    std::vector<std::pair<std::size_t, std::size_t>> r;
    std::size_t nt = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    for (std::size_t t = 0; t < nt; ++t) r.emplace_back(n * t / nt, n * (t + 1) / nt);
    return r;
}

}  // namespace uavdet
