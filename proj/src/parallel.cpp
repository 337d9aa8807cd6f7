#include "tdneat/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tdneat {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int thread_count_from_env() {
    const char* value = std::getenv("TDNEAT_THREADS");
    if (value == nullptr || *value == '\0') return 0;
    int parsed = 0;
    auto [ptr, ec] = std::from_chars(value, value + std::strlen(value), parsed);
    if (ec != std::errc{} || ptr != value + std::strlen(value) || parsed < 0) return 0;
    return parsed;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    const int workers = std::min<std::size_t>(resolve_thread_count(threads), n == 0 ? 1 : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = n * static_cast<std::size_t>(w) / static_cast<std::size_t>(workers);
        const std::size_t hi =
            n * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(workers);
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tdneat
