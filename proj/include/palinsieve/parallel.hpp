#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace palinsieve
{
    // Worker count used by the parallel helpers; 0 means hardware concurrency.
    inline unsigned& thread_setting()
    {
        static unsigned n = 1;
        return n;
    }

    inline unsigned worker_count()
    {
        const unsigned t = thread_setting();
        if (t != 0) return t;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    inline void set_threads(unsigned n) { thread_setting() = n; }

    // Runs body(i) for i in [0, count) across the worker pool. Each index is
    // handled exactly once; callers write into slot i and merge in index order,
    // so results never depend on the thread count.
    template <class Body>
    void parallel_for(std::size_t count, Body&& body)
    {
        const unsigned workers = unsigned(std::min<std::size_t>(worker_count(), count));
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i) body(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr err;
        std::mutex err_mu;
        auto run = [&]()
        {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    next = count;
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
        run();
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    // Fixed partition of [0, n) into `chunks` contiguous ranges.
    inline std::pair<std::size_t, std::size_t> chunk_range(std::size_t n, std::size_t chunks, std::size_t i)
    {
        return {n * i / chunks, n * (i + 1) / chunks};
    }
}
