#pragma once

#include <array>

#include "christoffel/grid.hpp"
#include "christoffel/sym.hpp"

namespace christoffel {

/// Antipodal deviation below which a field counts as even.
inline constexpr double kEvenTol = 1e-12;

/// Candidate solution phi = e^u, u the horospherical support function.
/// phi must be positive and finite; the h-convex regime additionally has
/// phi > 1, which is tracked but not enforced at construction (solver
/// iterates may dip and are handled by its trust constraints).
struct SupportField {
    SphericalField phi;
    double min_phi = 0.0;
    double max_phi = 0.0;
    double even_deviation = 0.0;
    bool is_even = false;
    bool is_above_one = false;

    SupportField() = default;
    explicit SupportField(SphericalField field);
};

/// Prescribed curvature-radius sum f > 0 with cached extrema.
struct PrescribedData {
    SphericalField f;
    double min_f = 0.0;
    double max_f = 0.0;

    PrescribedData() = default;
    explicit PrescribedData(SphericalField field);
};

/// Pointwise symmetric matrix U[phi] = D^2 phi - (|D phi|^2 / 2 phi) I
/// + ((phi - 1/phi)/2) I in the orthonormal frame, with eigenvalue cache.
/// Axisymmetric grids store the (radial, tangential) eigen-entries, the
/// tangential one carrying multiplicity n-1.
struct UMatrixField {
    GridPtr grid;
    int n = 2;
    std::vector<double> a_tt, a_tl, a_ll;
    std::vector<double> min_eig;
    double min_eig_global = 0.0;

    /// All n eigenvalues at a node (tangential multiplicity expanded).
    std::vector<double> eigenvalues_at(std::size_t k) const;
    double max_eig_at(std::size_t k) const;
    double trace_at(std::size_t k) const;
};

/// sigma_k of U over its n eigenvalues, per node.
SphericalField sigma_field(const UMatrixField& U, int k);

/// Admissibility of f: evenness plus positive semi-definiteness of
/// D^2(f^-1) - |D f^-1| I + f^-1 / ((8/n) max f + 2) I.
struct AdmissibilityReport {
    bool even_ok = false;
    double even_deviation = 0.0;
    bool cond2_ok = false;
    double cond2_min_eigenvalue = 0.0;
};

/// Residual of the support-function equation
///   Lap phi - (n/2)|D phi|^2/phi + (n/2)(phi - 1/phi) - f/phi.
SphericalField residual(const SupportField& phi, const PrescribedData& f, int n);

/// Same formula on bare fields (phi > 0 still required, f unconstrained);
/// used where f is being constructed rather than prescribed.
SphericalField residual_raw(const SphericalField& phi, const SphericalField& f, int n);

UMatrixField u_matrix(const SupportField& phi, int n);

/// Frechet derivative of the residual at phi:
///   psi -> Lap psi - n (D phi . D psi)/phi
///          + [ (n/2)|D phi|^2/phi^2 + (n/2)(1 + phi^-2) + f phi^-2 ] psi.
/// At constant phi = sqrt(1 + 2 gamma / n), f = gamma this collapses to Lap + n.
class JacobianOperator {
public:
    JacobianOperator(const SupportField& phi, const PrescribedData& f, int n);
    SphericalField apply(const SphericalField& psi) const;
    std::vector<double> apply_values(std::span<const double> psi) const;
    const GridPtr& grid() const { return grid_; }
    int dimension() const { return n_; }

private:
    GridPtr grid_;
    int n_;
    GradientField grad_phi_;
    std::vector<double> inv_phi_;
    std::vector<double> coeff_;
};

JacobianOperator linearize(const SupportField& phi, const PrescribedData& f, int n);

AdmissibilityReport check_conditions(const PrescribedData& f, int n);

/// f = (h^-1 + C)^-1; admissible for C large enough.
PrescribedData generate_admissible_f(const SphericalField& h, double C);

/// Doubling sweep from C = 1 followed by 40 bisection steps on the minimum
/// eigenvalue of the admissibility matrix; returns the passing endpoint.
double find_admissible_c(const SphericalField& h, int n);

/// Harmonic interpolation f_t = [(1-t)(max f)^-1 + t f^-1]^-1.
PrescribedData homotopy_f(const PrescribedData& f, double t);

/// Closed-form solution family for constant f = gamma:
///   phi(x) = sqrt(1 + 2 gamma/n) (sqrt(|x0|^2 + 1) - <x0, x>).
/// Even iff x0 = 0; rejected if phi <= 1 anywhere. Axisymmetric grids accept
/// only axial x0 = (0, 0, a).
SupportField constant_solution(GridPtr grid, double gamma, int n,
                               const std::array<double, 3>& x0 = {0.0, 0.0, 0.0});

void require_dimension(const GridPtr& grid, int n, const char* where);

} // namespace christoffel
