// Copyright 2026 The ionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IONSIM_PARALLEL_H
#define IONSIM_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ionsim {

/// Worker count: IONSIM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline size_t worker_count() {
    if (const char *env = std::getenv("IONSIM_THREADS")) {
        try {
            long n = std::stol(env);
            if (n > 0) {
                return static_cast<size_t>(n);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

/// Calls body(i) for i in [0, n). Work items must write only to their own
/// slot of any shared output; the first exception thrown is rethrown.
template <typename Body>
void parallel_for(size_t n, Body &&body) {
    size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; i++) {
            body(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; w++) {
        pool.emplace_back(run);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace ionsim

#endif
