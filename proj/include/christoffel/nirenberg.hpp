#pragma once

#include "christoffel/core.hpp"

namespace christoffel {

/// Conformal-factor data for the prescribed-scalar-curvature equation on S^n,
///   -Lap v + (n(n-2)/4) v = ((n-2)/(4(n-1))) R v^((n+2)/(n-2)),  v > 0, n >= 3.
struct NirenbergData {
    SphericalField v;         // conformal factor, v > 0
    SphericalField R;         // prescribed scalar curvature (verified convention)
    SphericalField R_printed; // n(n-1)(f + 1/2), retained for comparison
    int n = 3;
};

/// Change of variables v = phi^(-(n-2)/2). The curvature uses the oracle-verified
/// convention R = (n-1)(n + 2f); the commonly printed n(n-1)(f + 1/2) is carried
/// alongside (the two agree only when f (n-2) = n/2).
NirenbergData to_nirenberg(const SupportField& phi, const PrescribedData& f, int n);

/// Pointwise residual -Lap v + (n(n-2)/4) v - ((n-2)/(4(n-1))) R v^((n+2)/(n-2)).
SphericalField nirenberg_residual(const SphericalField& v, const SphericalField& R, int n);

} // namespace christoffel
