#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sporadic {

/// Worker count resolution: the SPORADIC_FORGE_JOBS environment variable
/// overrides the requested value; a request of 0 means "available
/// parallelism".
inline int64_t resolve_jobs(int64_t requested = 0) {
    if (const char* env = std::getenv("SPORADIC_FORGE_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return v;
    }
    if (requested >= 1) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int64_t>(hw) : 1;
}

/// fn(i) for i in [0, count), distributed over `jobs` threads. The first
/// exception thrown by any worker is rethrown to the caller.
template <typename Fn>
void parallel_for(int64_t count, int64_t jobs, Fn fn) {
    if (count <= 0) return;
    jobs = std::min<int64_t>(std::max<int64_t>(jobs, 1), count);
    if (jobs == 1) {
        for (int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(jobs));
    for (int64_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const int64_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sporadic
