#pragma once

// Shared helpers for the test suites: independent oracles (kept free of the
// library's own differentiation/σ_k code paths) and small generators.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "christoffel/core.hpp"
#include "christoffel/grid.hpp"

namespace testsupport {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Composite-Simpson integral on [a, b]; independent quadrature oracle.
inline double simpson(const std::function<double(double)>& f, double a, double b, int slices) {
    const int n = 2 * slices;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Brute-force sigma_k by subset enumeration of an explicit eigenvalue list
/// (the independent oracle for the Newton-identity implementation).
inline double sigma_bruteforce(const std::vector<double>& lambda, int k) {
    const int m = static_cast<int>(lambda.size());
    if (k == 0) return 1.0;
    double total = 0.0;
    std::vector<int> idx(k);
    std::function<void(int, int, double)> rec = [&](int start, int depth, double prod) {
        if (depth == k) {
            total += prod;
            return;
        }
        for (int i = start; i < m; ++i) rec(i + 1, depth + 1, prod * lambda[i]);
    };
    rec(0, 0, 1.0);
    return total;
}

/// Random symmetric matrix with entries in [-1, 1].
inline christoffel::SymMatrix random_sym(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    christoffel::SymMatrix A(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) A.set(i, j, dist(rng));
    return A;
}

/// Random orthogonal matrix by Gram-Schmidt on a Gaussian sample.
inline std::vector<double> random_orthogonal(std::mt19937_64& rng, int m) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> q(static_cast<std::size_t>(m) * m);
    for (auto& v : q) v = gauss(rng);
    for (int c = 0; c < m; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            double dot = 0.0;
            for (int r = 0; r < m; ++r)
                dot += q[static_cast<std::size_t>(r) * m + c] * q[static_cast<std::size_t>(r) * m + prev];
            for (int r = 0; r < m; ++r)
                q[static_cast<std::size_t>(r) * m + c] -= dot * q[static_cast<std::size_t>(r) * m + prev];
        }
        double norm = 0.0;
        for (int r = 0; r < m; ++r) {
            const double v = q[static_cast<std::size_t>(r) * m + c];
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (int r = 0; r < m; ++r) q[static_cast<std::size_t>(r) * m + c] /= norm;
    }
    return q;
}

/// Random band-limited field on a full-S2 grid (coefficients up to max_degree),
/// optionally restricted to even degrees (hence even under the antipodal map).
inline christoffel::SphericalField random_bandlimited(const christoffel::GridPtr& grid,
                                                      int max_degree, std::mt19937_64& rng,
                                                      bool even_only) {
    using namespace christoffel;
    const S2Harmonics& engine = grid->s2();
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    S2Coeffs c = S2Coeffs::zeros(engine.degree());
    for (int m = 0; m <= max_degree; ++m)
        for (int l = std::max(m, 0); l <= max_degree; ++l) {
            if (l < m) continue;
            if (even_only && l % 2 == 1) continue;
            c.c[c.cos_index(l, m)] = dist(rng);
            if (m >= 1) c.c[c.sin_index(l, m)] = dist(rng);
        }
    return {grid, engine.synthesize(c)};
}

/// Random even band-limited zonal field on an axisymmetric grid.
inline christoffel::SphericalField random_zonal_even(const christoffel::GridPtr& grid,
                                                     int max_mode, std::mt19937_64& rng) {
    using namespace christoffel;
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> coeffs(grid->node_count(), 0.0);
    for (int k = 0; k <= max_mode && k < static_cast<int>(coeffs.size()); k += 2)
        coeffs[k] = dist(rng);
    return {grid, grid->zonal().synthesize(coeffs)};
}

} // namespace testsupport
