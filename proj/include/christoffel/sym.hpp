#pragma once

#include <span>
#include <vector>

namespace christoffel {

/// Dense symmetric matrix of small order; only the upper triangle is stored,
/// so symmetry is exact by construction.
class SymMatrix {
public:
    explicit SymMatrix(int order);
    static SymMatrix diagonal(std::span<const double> entries);

    int order() const { return m_; }
    double operator()(int i, int j) const { return a_[index(i, j)]; }
    void set(int i, int j, double v) { a_[index(i, j)] = v; }
    void add(int i, int j, double v) { a_[index(i, j)] += v; }

    double trace() const;
    /// Eigenvalues in ascending order (cyclic Jacobi; order <= 8).
    std::vector<double> eigenvalues() const;
    double min_eigenvalue() const;

private:
    std::size_t index(int i, int j) const;
    int m_;
    std::vector<double> a_;
};

/// k-th elementary symmetric function of the eigenvalues, via the Newton-identity
/// recurrence on power sums (no eigendecomposition). sigma_0 = 1.
double sigma_k(const SymMatrix& A, int k);

/// Same recurrence applied to an explicit eigenvalue list.
double sigma_k(std::span<const double> lambda, int k);

/// Matrix of partials d sigma_k / d A_ab: the (k-1)-th Newton tensor
/// sum_{j=0..k-1} (-1)^j sigma_{k-1-j}(A) A^j.
SymMatrix sigma_k_gradient(const SymMatrix& A, int k);

/// Second partial d^2 sigma_k / (d A_ab d A_cd) through the generalized
/// Kronecker-delta expansion; intended for order <= 3 (test use).
double sigma_k_hessian(const SymMatrix& A, int k, int a, int b, int c, int d);

/// true iff sigma_i(lambda) > 0 for all 1 <= i <= k (strict).
bool garding_cone_member(std::span<const double> lambda, int k);

} // namespace christoffel
