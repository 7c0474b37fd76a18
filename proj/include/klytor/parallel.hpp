#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace klytor {

/// Worker count from KLYTOR_THREADS (default: hardware concurrency, at least 1).
inline std::size_t thread_count() {
    if (const char* s = std::getenv("KLYTOR_THREADS")) {
        try {
            long n = std::stol(s);
            if (n >= 1)
                return static_cast<std::size_t>(n);
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs f(i) for i in [0, n) on up to thread_count() threads. Results must be
/// written to per-index slots; the lowest-index exception is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace klytor
