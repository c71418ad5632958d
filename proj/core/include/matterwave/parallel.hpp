#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace matterwave {

// Worker count: MATTERWAVE_WORKERS if set, otherwise hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("MATTERWAVE_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Index-parallel loop. Each index must write only to its own output slot;
// under that contract the result is identical for any worker count.
template <typename F>
void parallel_for_index(std::size_t count, F&& body, unsigned workers = 0) {
    if (workers == 0) workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::atomic<int> error_guard{0}; // first error wins

    auto drain = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                int expected = 0;
                if (error_guard.compare_exchange_strong(expected, 1)) {
                    error = std::current_exception();
                }
                failed.store(true);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace matterwave
