#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace christoffel {

/// Gauss-Legendre nodes (descending in t) and weights for integration over [-1, 1].
/// Node/weight arrays are exactly symmetric: t[n-1-i] == -t[i], w[n-1-i] == w[i].
void gauss_legendre(int n, std::vector<double>& t, std::vector<double>& w);

/// Real spherical-harmonic coefficients up to degree L.
///
/// Layout: m = 0 block of L+1 cosine-only coefficients, then for each m >= 1
/// a cos block and a sin block of L+1-m coefficients each ((L+1)^2 total).
struct S2Coeffs {
    int L = 0;
    std::vector<double> c;

    static S2Coeffs zeros(int L) { return {L, std::vector<double>((L + 1) * (L + 1), 0.0)}; }
    std::size_t cos_index(int l, int m) const;
    std::size_t sin_index(int l, int m) const; // m >= 1
};

/// Pseudospectral engine on the full S^2: Gauss-Legendre colatitudes x equiangular
/// longitudes, orthonormal real spherical harmonics. Analysis is exact (up to
/// roundoff) for fields band-limited to degree L; all derivatives are evaluated
/// in coefficient space and synthesized pointwise, so there are no pole nodes
/// and no finite-difference stencils.
class S2Harmonics {
public:
    explicit S2Harmonics(int L);

    int degree() const { return L_; }
    int nlat() const { return nlat_; }
    int nlon() const { return nlon_; }
    std::size_t node_count() const { return static_cast<std::size_t>(nlat_) * nlon_; }

    // node k = i * nlon + j
    double node_cos_theta(int i) const { return glx_[i]; }
    double node_sin_theta(int i) const { return sin_theta_[i]; }
    double node_theta(int i) const { return theta_[i]; }
    double node_lambda(int j) const { return lambda_[j]; }
    double colat_weight(int i) const { return glw_[i]; }
    double node_weight(std::size_t k) const;
    /// Unit direction with exact antipodal symmetry: dir(antipode(k)) == -dir(k).
    void node_direction(std::size_t k, double out[3]) const;

    S2Coeffs analyze(std::span<const double> values) const;
    std::vector<double> synthesize(const S2Coeffs& coeffs) const;

    std::vector<double> laplacian(std::span<const double> values) const;
    /// Orthonormal-frame gradient components (d/dtheta, d/dlambda / sin theta).
    void gradient(std::span<const double> values, std::vector<double>& g_theta,
                  std::vector<double>& g_lambda) const;
    /// Covariant Hessian entries in the frame (e_theta, e_lambda).
    void hessian(std::span<const double> values, std::vector<double>& h_tt,
                 std::vector<double>& h_tl, std::vector<double>& h_ll) const;

    /// Solves (Laplace + shift) psi = rhs on the even-degree subspace; odd-degree
    /// content of rhs is discarded. shift must avoid the even eigenvalues -l(l+1).
    std::vector<double> invert_helmholtz_even(std::span<const double> rhs, double shift) const;

    /// Zero out coefficients of odd degree l (spectral even-projection).
    static void project_even(S2Coeffs& coeffs);

    double evaluate(const S2Coeffs& coeffs, double theta, double lambda) const;

private:
    // scaled-basis synthesis: per-coefficient factor fn(l,m), optional d/dtheta
    // table and optional d/dlambda swap of the azimuthal parts
    std::vector<double> synth_impl(const S2Coeffs& coeffs, int table, bool dlambda,
                                   int scale_kind) const;
    std::vector<double> deflate_mean(std::span<const double> values) const;

    int L_, nlat_, nlon_;
    std::vector<double> glx_, glw_;      // Gauss-Legendre nodes/weights, t descending
    std::vector<double> theta_, sin_theta_, cot_theta_;
    std::vector<double> lambda_, cos_lam_, sin_lam_; // [m * nlon + j], m = 0..L
    std::vector<double> dir_cos_, dir_sin_;          // cos/sin of lambda_j, antipodally exact
    // normalized associated Legendre tables and their theta-derivatives,
    // tbl[m] is (L+1-m) x nlat row-major, normalization folded in
    std::vector<std::vector<double>> plm_, dplm_;
};

/// Collocation engine for rotationally symmetric fields on S^n: values on the
/// midpoint colatitude grid theta_i = (i + 1/2) pi / M, cosine basis cos(k theta).
/// Smooth axisymmetric functions are even cosine series of theta, which builds in
/// the f'(0) = f'(pi) = 0 regularity at the (excluded) poles.
class ZonalCosine {
public:
    ZonalCosine(int dim, int M);

    int dimension() const { return dim_; }
    int size() const { return M_; }
    std::size_t node_count() const { return static_cast<std::size_t>(M_); }

    double node_theta(int i) const { return theta_[i]; }
    double node_cos_theta(int i) const { return cos_theta_[i]; }
    double node_sin_theta(int i) const { return sin_theta_[i]; }
    double node_cot_theta(int i) const { return cot_theta_[i]; }
    double node_weight(int i) const { return weight_[i]; }
    double sphere_area() const { return area_; }

    std::vector<double> analyze(std::span<const double> values) const;
    std::vector<double> synthesize(std::span<const double> coeffs) const;

    std::vector<double> derivative(std::span<const double> values) const;
    std::vector<double> second_derivative(std::span<const double> values) const;
    std::vector<double> laplacian(std::span<const double> values) const;

    /// Solves (Laplace + shift) psi = rhs restricted to even cosine modes.
    /// The operator is upper triangular in the cosine basis, with diagonal
    /// shift - k (k + dim - 1).
    std::vector<double> invert_helmholtz_even(std::span<const double> rhs, double shift) const;

    double evaluate(std::span<const double> coeffs, double theta) const;

private:
    std::vector<double> deflate_mean(std::span<const double> values) const;
    int dim_, M_;
    double area_;
    std::vector<double> theta_, cos_theta_, sin_theta_, cot_theta_, weight_;
    std::vector<double> cos_tab_, sin_tab_; // [k * M + i], exact reflection symmetry
};

} // namespace christoffel
