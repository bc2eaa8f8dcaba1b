#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bdlab {

/// Runs fn(i) for i in [begin, end) across up to `threads` workers (0 = all
/// hardware threads). Each index owns its outputs, so results are
/// schedule-independent; if several indices throw, the lowest index wins.
inline void parallel_for(long begin, long end, int threads, const std::function<void(long)>& fn) {
    long n = end - begin;
    if (n <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned want = threads > 0 ? static_cast<unsigned>(threads) : hw;
    if (want > static_cast<unsigned>(n)) want = static_cast<unsigned>(n);
    if (want <= 1) {
        for (long i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<long> next(begin);
    std::mutex err_mu;
    long err_index = end;
    std::exception_ptr err;
    auto worker = [&]() {
        while (true) {
            long i = next.fetch_add(1);
            if (i >= end) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (unsigned t = 0; t < want; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace bdlab
