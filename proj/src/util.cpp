#include "christoffel/util.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace christoffel {

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

int thread_count() {
    const char* env = std::getenv("CHRISTOFFEL_THREADS");
    if (env == nullptr) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    const long hw = static_cast<long>(std::thread::hardware_concurrency());
    return static_cast<int>(hw > 0 && v > hw ? hw : v);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int workers = thread_count();
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        if (lo >= n) break;
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace christoffel
