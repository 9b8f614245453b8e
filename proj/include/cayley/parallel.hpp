/**
 * @file parallel.hpp
 * @brief Minimal chunked parallel-for. Worker count is capped by the
 *        INTEGRAL_CAYLEY_THREADS environment variable.
 *
 * Callers must write results into preallocated, index-addressed storage so
 * output stays deterministic regardless of the thread count.
 */
#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cayley {

inline std::size_t worker_count() {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("INTEGRAL_CAYLEY_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = static_cast<std::size_t>(v);
    }
    return hw;
}

/// Runs fn(begin, end) over contiguous chunks of [0, count).
/// The first exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_chunks(std::size_t count, Fn&& fn) {
    std::size_t workers = worker_count();
    if (workers <= 1 || count < 2 * workers) {
        fn(std::size_t{0}, count);
        return;
    }
    std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        if (begin >= count) break;
        std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace cayley
