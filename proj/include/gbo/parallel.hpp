#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gbo {

// Worker count from GBO_WORKERS, defaulting to 1 (serial). Results must be
// written into caller-indexed slots so the outcome is independent of the
// worker count; see parallel_for below.
inline int default_worker_count() {
    const char* env = std::getenv("GBO_WORKERS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 1) return 1;
    if (v > 256) v = 256;
    return static_cast<int>(v);
}

// Runs fn(i) for i in [0, count). With workers <= 1 this is a plain loop;
// otherwise indices are handed out through an atomic counter. fn must only
// write to slots owned by its index, which keeps results byte-identical
// across worker counts. The first exception thrown by any worker is rethrown
// on the calling thread after all workers join.
inline void parallel_for(std::size_t count, int workers,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t nthreads = static_cast<std::size_t>(workers);
    if (nthreads > count) nthreads = count;

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto body = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gbo
