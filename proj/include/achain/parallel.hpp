#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace achain {

/// Worker count: hardware concurrency, capped by ACH_THREADS when set.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ACH_THREADS")) {
        try {
            long cap = std::stol(env);
            if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
        } catch (...) {
        }
    }
    return hw;
}

/// Splits [begin, end) into contiguous chunks, one per worker, and calls
/// fn(chunk_index, chunk_begin, chunk_end). Chunk boundaries depend only on the
/// range and the worker count; callers merge per-chunk results in chunk order.
template <typename Fn>
void parallel_chunks(std::uint64_t begin, std::uint64_t end, unsigned workers, Fn&& fn) {
    if (end <= begin) return;
    const std::uint64_t total = end - begin;
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total)));
    const std::uint64_t step = (total + workers - 1) / workers;
    if (workers == 1) {
        fn(0u, begin, end);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = begin + w * step;
        std::uint64_t hi = std::min(end, lo + step);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] {
            try {
                fn(w, lo, hi);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace achain
