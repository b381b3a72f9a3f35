#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>

namespace christoffel {

/// Compensated (Kahan) accumulator; summation order is fixed by the caller.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// FNV-1a, 64-bit. Used for output manifests (determinism certificates, not security).
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex(std::uint64_t value);

/// Shortest round-trip decimal formatting ("%.17g" is exact for doubles).
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Thread count from CHRISTOFFEL_THREADS (the only environment variable honored); >= 1.
int thread_count();

/// Runs body(i) for i in [0, n) over disjoint slices, one slice per worker.
/// Output must be written to disjoint locations so the slicing is unobservable.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace christoffel
