#include "permsim/core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace permsim {

int default_threads() {
    if(const char *env = std::getenv("PERMSIM_THREADS")) {
        try {
            const int v = std::stoi(env);
            if(v > 0) return v;
        } catch(const std::exception &) {
            // fall through to the default
        }
    }
    return 1;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &body) {
    if(count == 0) return;
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if(workers == 1 || count == 1) {
        for(std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr       error;
    std::mutex               error_mutex;
    auto                     run = [&] {
        for(std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch(...) {
                std::lock_guard lock(error_mutex);
                if(!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for(std::size_t w = 1; w < std::min(workers, count); ++w) pool.emplace_back(run);
    run();
    for(auto &t : pool) t.join();
    if(error) std::rethrow_exception(error);
}

} // namespace permsim
