#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ppicod::detail {

inline std::size_t resolve_threads(std::size_t requested, std::size_t tasks) {
    std::size_t t = requested == 0 ? std::max<std::size_t>(1, std::thread::hardware_concurrency()) : requested;
    return std::max<std::size_t>(1, std::min(t, tasks));
}

/// Runs task(worker, index) for every index in [0, count) across `threads` workers.
/// Indices are claimed dynamically; the first exception is rethrown after joining.
template <class Task>
void parallel_for(std::size_t count, std::size_t threads, Task&& task) {
    threads = resolve_threads(threads, count);
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            task(std::size_t{0}, i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) {
                    task(w, i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace ppicod::detail
