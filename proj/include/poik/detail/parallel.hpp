#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace poik::detail {

// Runs fn(i) for i in [0, n_tasks) across a small thread pool. Tasks must be
// independent; callers keep determinism by writing into index-addressed
// slots. The first exception is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::int64_t n_tasks, Fn&& fn, unsigned max_threads = 0) {
    if (n_tasks <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (max_threads != 0 && max_threads < hw) hw = max_threads;
    if (hw > 8) hw = 8;
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::int64_t>(n_tasks, static_cast<std::int64_t>(hw)));
    if (n_threads <= 1) {
        for (std::int64_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= n_tasks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace poik::detail
