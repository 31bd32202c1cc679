#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace dnastore {

// Runs body(i) for i in [0, count). Each index must write only its own slot
// of the caller's result storage; the caller then reduces in index order, so
// results do not depend on scheduling. threads == 0 picks the hardware count.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body,
                         unsigned threads = 0) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                // Contiguous stripes keep per-thread scratch buffers warm.
                const std::size_t lo = count * t / threads;
                const std::size_t hi = count * (t + 1) / threads;
                for (std::size_t i = lo; i < hi; ++i)
                    body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace dnastore
