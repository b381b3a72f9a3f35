#include "christoffel/sym.hpp"

#include <algorithm>
#include <cmath>

#include "christoffel/errors.hpp"

namespace christoffel {

namespace {

// dense order-m matrix helpers (orders here are tiny: n <= 8)
using Dense = std::vector<double>;

Dense to_dense(const SymMatrix& A) {
    const int m = A.order();
    Dense d(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) d[static_cast<std::size_t>(i) * m + j] = A(i, j);
    return d;
}

Dense multiply(const Dense& a, const Dense& b, int m) {
    Dense c(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) {
            const double ail = a[static_cast<std::size_t>(i) * m + l];
            if (ail == 0.0) continue;
            for (int j = 0; j < m; ++j)
                c[static_cast<std::size_t>(i) * m + j] += ail * b[static_cast<std::size_t>(l) * m + j];
        }
    return c;
}

double dense_trace(const Dense& a, int m) {
    double t = 0.0;
    for (int i = 0; i < m; ++i) t += a[static_cast<std::size_t>(i) * m + i];
    return t;
}

// elementary symmetric functions from power sums via Newton's identities
std::vector<double> elementary_from_power_sums(std::span<const double> p, int kmax) {
    std::vector<double> e(kmax + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        double acc = 0.0;
        double sign = 1.0;
        for (int i = 1; i <= k; ++i) {
            acc += sign * e[k - i] * p[i];
            sign = -sign;
        }
        e[k] = acc / k;
    }
    return e;
}

std::vector<double> power_sums(const SymMatrix& A, int kmax) {
    const int m = A.order();
    std::vector<double> p(kmax + 1, 0.0);
    p[0] = m;
    Dense base = to_dense(A);
    Dense pw = base;
    for (int k = 1; k <= kmax; ++k) {
        p[k] = dense_trace(pw, m);
        if (k < kmax) pw = multiply(pw, base, m);
    }
    return p;
}

// determinant of a tiny 0/1 matrix by permutation expansion (p <= 4 here)
double small_det(const std::vector<double>& M, int p) {
    if (p == 0) return 1.0;
    if (p == 1) return M[0];
    std::vector<int> perm(p);
    for (int i = 0; i < p; ++i) perm[i] = i;
    double det = 0.0;
    do {
        int inversions = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (perm[i] > perm[j]) ++inversions;
        double prod = (inversions % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < p && prod != 0.0; ++i)
            prod *= M[static_cast<std::size_t>(i) * p + perm[i]];
        det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

double generalized_delta(std::span<const int> I, std::span<const int> J) {
    const int p = static_cast<int>(I.size());
    std::vector<double> M(static_cast<std::size_t>(p) * p);
    for (int r = 0; r < p; ++r)
        for (int s = 0; s < p; ++s) M[static_cast<std::size_t>(r) * p + s] = (I[r] == J[s]) ? 1.0 : 0.0;
    return small_det(M, p);
}

} // namespace

SymMatrix::SymMatrix(int order) : m_(order) {
    if (order < 1 || order > 8) throw InvalidArgument("SymMatrix order must be in [1, 8]");
    a_.assign(static_cast<std::size_t>(order) * (order + 1) / 2, 0.0);
}

SymMatrix SymMatrix::diagonal(std::span<const double> entries) {
    SymMatrix A(static_cast<int>(entries.size()));
    for (int i = 0; i < A.order(); ++i) A.set(i, i, entries[i]);
    return A;
}

std::size_t SymMatrix::index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * m_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
           static_cast<std::size_t>(j - i);
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < m_; ++i) t += (*this)(i, i);
    return t;
}

std::vector<double> SymMatrix::eigenvalues() const {
    // cyclic Jacobi rotations; plenty for order <= 8
    const int m = m_;
    Dense a = to_dense(*this);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) off += std::abs(a[static_cast<std::size_t>(i) * m + j]);
        if (off == 0.0) break;
        double scale = 0.0;
        for (double v : a) scale = std::max(scale, std::abs(v));
        if (off <= 1e-15 * std::max(scale, 1e-300) * m * m) break;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
                const double apq = a[static_cast<std::size_t>(p) * m + q];
                if (apq == 0.0) continue;
                const double app = a[static_cast<std::size_t>(p) * m + p];
                const double aqq = a[static_cast<std::size_t>(q) * m + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < m; ++k) {
                    const double akp = a[static_cast<std::size_t>(k) * m + p];
                    const double akq = a[static_cast<std::size_t>(k) * m + q];
                    a[static_cast<std::size_t>(k) * m + p] = c * akp - s * akq;
                    a[static_cast<std::size_t>(k) * m + q] = s * akp + c * akq;
                }
                for (int k = 0; k < m; ++k) {
                    const double apk = a[static_cast<std::size_t>(p) * m + k];
                    const double aqk = a[static_cast<std::size_t>(q) * m + k];
                    a[static_cast<std::size_t>(p) * m + k] = c * apk - s * aqk;
                    a[static_cast<std::size_t>(q) * m + k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(m);
    for (int i = 0; i < m; ++i) eig[i] = a[static_cast<std::size_t>(i) * m + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

double SymMatrix::min_eigenvalue() const { return eigenvalues().front(); }

double sigma_k(const SymMatrix& A, int k) {
    const int m = A.order();
    if (k < 0 || k > m) throw InvalidArgument("sigma_k: k out of range [0, order]");
    if (k == 0) return 1.0;
    const std::vector<double> p = power_sums(A, k);
    return elementary_from_power_sums(p, k)[k];
}

double sigma_k(std::span<const double> lambda, int k) {
    const int m = static_cast<int>(lambda.size());
    if (k < 0 || k > m) throw InvalidArgument("sigma_k: k out of range [0, size]");
    if (k == 0) return 1.0;
    std::vector<double> p(k + 1, 0.0);
    p[0] = m;
    for (int j = 1; j <= k; ++j) {
        double acc = 0.0;
        for (double lam : lambda) acc += std::pow(lam, j);
        p[j] = acc;
    }
    return elementary_from_power_sums(p, k)[k];
}

SymMatrix sigma_k_gradient(const SymMatrix& A, int k) {
    const int m = A.order();
    if (k < 1 || k > m) throw InvalidArgument("sigma_k_gradient: k out of range [1, order]");
    const std::vector<double> p = power_sums(A, k);
    const std::vector<double> e = elementary_from_power_sums(p, k);
    // Newton tensor T_{k-1} = sum_j (-1)^j e_{k-1-j} A^j
    const Dense base = to_dense(A);
    Dense pw(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) pw[static_cast<std::size_t>(i) * m + i] = 1.0; // A^0
    Dense acc(static_cast<std::size_t>(m) * m, 0.0);
    double sign = 1.0;
    for (int j = 0; j <= k - 1; ++j) {
        const double coef = sign * e[k - 1 - j];
        for (std::size_t idx = 0; idx < acc.size(); ++idx) acc[idx] += coef * pw[idx];
        if (j < k - 1) pw = multiply(pw, base, m);
        sign = -sign;
    }
    SymMatrix out(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) out.set(i, j, acc[static_cast<std::size_t>(i) * m + j]);
    return out;
}

double sigma_k_hessian(const SymMatrix& A, int k, int a, int b, int c, int d) {
    const int m = A.order();
    if (m > 3) throw InvalidArgument("sigma_k_hessian supports order <= 3");
    if (k < 2 || k > m) return 0.0;
    const int extra = k - 2;
    double factorial = 1.0;
    for (int i = 2; i <= extra; ++i) factorial *= i;
    std::vector<int> I(k), J(k);
    I[0] = a;
    I[1] = c;
    J[0] = b;
    J[1] = d;
    double total = 0.0;
    if (extra == 0) {
        total = generalized_delta(I, J);
    } else { // extra == 1 given order <= 3
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                I[2] = i;
                J[2] = j;
                const double delta = generalized_delta(I, J);
                if (delta != 0.0) total += delta * A(i, j);
            }
    }
    return total / factorial;
}

bool garding_cone_member(std::span<const double> lambda, int k) {
    const int m = static_cast<int>(lambda.size());
    for (int i = 1; i <= std::min(k, m); ++i)
        if (sigma_k(lambda, i) <= 0.0) return false;
    if (k > m) return false; // sigma_i identically 0 beyond the order is not > 0
    return true;
}

} // namespace christoffel
