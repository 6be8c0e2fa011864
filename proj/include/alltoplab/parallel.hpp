#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace alltoplab {

/// Resolve a requested worker count: 0 means "use the hardware", anything
/// else is taken literally. Always at least 1.
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Smallest index in [0, n) satisfying pred, or n if none does.
///
/// The range is split into one contiguous chunk per worker. Workers abandon
/// any chunk that starts past the best witness found so far, and bail out of
/// a chunk as soon as the running index passes it, so the returned index is
/// the global minimum regardless of thread count or scheduling.
template <typename Pred>
uint64_t find_first(uint64_t n, unsigned threads, Pred&& pred) {
    threads = resolve_threads(threads);
    if (n == 0) return 0;
    if (threads <= 1 || n < 2 * threads) {
        for (uint64_t i = 0; i < n; ++i)
            if (pred(i)) return i;
        return n;
    }
    std::atomic<uint64_t> best{n};
    auto worker = [&](uint64_t lo, uint64_t hi) {
        if (lo >= best.load(std::memory_order_relaxed)) return;
        for (uint64_t i = lo; i < hi; ++i) {
            if (i >= best.load(std::memory_order_relaxed)) return;
            if (pred(i)) {
                uint64_t cur = best.load(std::memory_order_relaxed);
                while (i < cur &&
                       !best.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        uint64_t lo = n * t / threads;
        uint64_t hi = n * (t + 1) / threads;
        pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
    return best.load();
}

/// Map-reduce over [0, n) with per-chunk accumulators merged in chunk order.
///
/// fn(lo, hi, acc) fills a chunk-local accumulator; merge(total, acc) folds
/// the locals left-to-right by chunk index. The chunk boundaries depend on
/// the worker count, so the result is worker-count independent exactly when
/// folding two adjacent ranges equals processing their union in one go --
/// true for the merges used here (exact sums, counts, min-index witnesses).
template <typename R, typename Fn, typename Merge>
R chunked_reduce(uint64_t n, unsigned threads, R init, Fn&& fn, Merge&& merge) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n < 2 * threads) {
        fn(uint64_t{0}, n, init);
        return init;
    }
    std::vector<R> locals(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        uint64_t lo = n * t / threads;
        uint64_t hi = n * (t + 1) / threads;
        pool.emplace_back([&, t, lo, hi] { fn(lo, hi, locals[t]); });
    }
    for (auto& th : pool) th.join();
    for (auto& local : locals) merge(init, local);
    return init;
}

} // namespace alltoplab
