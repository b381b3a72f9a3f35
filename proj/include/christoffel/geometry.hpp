#pragma once

#include <array>
#include <filesystem>

#include "christoffel/core.hpp"

namespace christoffel {

/// Minkowski inner product on R^(n+1,1) vectors stored as (spatial..., time).
inline double minkowski_dot(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

/// Hypersurface reconstructed from a uniformly h-convex support field: points on
/// the future hyperboloid, outward normals, radial data and curvature spectra.
/// Axisymmetric grids store reduced components (meridian, axis, 0, time); the
/// tangential curvature entries carry multiplicity n-1.
struct EmbeddedHypersurface {
    GridPtr grid;
    int n = 2;
    std::vector<std::array<double, 4>> point;  // X on the hyperboloid
    std::vector<std::array<double, 4>> normal; // unit outward nu
    std::vector<double> cosh_r;                // radial function
    std::vector<double> v_dot_nu;              // <V, nu>, V = sinh r  d_r
    // principal curvatures / hyperbolic curvature radii R_i = 1/(kappa_i - 1),
    // ordered by the corresponding eigenvalue of U (axisym: [radial, tangential])
    std::vector<double> kappa1, kappa2;
    std::vector<double> radius1, radius2;
};

/// Embedding from the support function; requires phi > 1 and U[phi] > 0.
EmbeddedHypersurface embed(const SupportField& phi, int n);

struct ShapeData {
    std::vector<double> kappa1, kappa2;   // eigenvalues of I + (phi U)^-1
    std::vector<double> radius1, radius2; // phi * eigenvalues of U
};

ShapeData shape(const SupportField& phi, int n);

/// sum_i R_i - f pointwise; equals phi * residual(phi, f) up to roundoff.
SphericalField christoffel_residual(const SupportField& phi, const PrescribedData& f, int n);

/// Both sides of the shifted-curvature integral identity at level k:
///   lhs = int phi^(k-n) sigma_{k+1}(U) dS,
///   rhs = C(n,k+1)/C(n,k) * int [|D phi|^2/(2 phi) + (phi - 1/phi)/2]
///                               phi^(k-n) sigma_k(U) dS.
/// rhs_printed carries the reciprocal-coefficient variant for comparison; the
/// constant-sphere oracle singles out the ratio used for rhs.
struct IdentityCheck {
    int k = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double rhs_printed = 0.0;
    double relative_gap = 0.0; // |lhs - rhs| / |lhs|
};

IdentityCheck integral_identity_check(const SupportField& phi, int k, int n);

/// Discrete check of the support-function duality:
/// for each direction x, sup over surface nodes of log(-<X(y), (x,1)>) vs log phi(x).
struct DualityCheck {
    double max_abs_deviation = 0.0;
    double max_signed_deviation = 0.0; // discrete sup never exceeds log phi (up to roundoff)
};

DualityCheck support_duality_check(const SupportField& phi, int n);

/// OBJ triangle mesh of the hypersurface projected to the Poincare ball,
/// p = X_spatial / (1 + X_time). Full-S2 grids only.
void export_ball_mesh(const EmbeddedHypersurface& surface, const std::filesystem::path& path);

} // namespace christoffel
