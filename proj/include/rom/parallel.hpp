/******************************************************************************
 *
 * Copyright (c) 2026, the snaprom project developers. See the top-level
 * LICENSE file for details.
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 *****************************************************************************/

#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rom {

/// Worker count for batch loops: hardware concurrency capped by ROM_THREADS.
inline unsigned worker_count() {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ROM_THREADS")) {
        char* end = nullptr;
        const long requested = std::strtol(env, &end, 10);
        if (end != env && requested >= 1) {
            workers = std::min(workers, static_cast<unsigned>(requested));
        }
    }
    return workers;
}

/// Run fn(i) for i in [0, count) across worker threads.  Work items must be
/// independent; the first exception is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace rom
