#include "christoffel/nirenberg.hpp"

#include <cmath>

#include "christoffel/errors.hpp"

namespace christoffel {

NirenbergData to_nirenberg(const SupportField& phi, const PrescribedData& f, int n) {
    if (n < 3) throw InvalidArgument("to_nirenberg: the conformal exponent needs n >= 3");
    require_dimension(phi.phi.grid, n, "to_nirenberg");
    if (phi.phi.grid != f.f.grid)
        throw InvalidArgument("to_nirenberg: phi and f live on different grids");
    NirenbergData out;
    out.n = n;
    const double expo = -0.5 * (n - 2.0);
    std::vector<double> v(phi.phi.size()), r(phi.phi.size()), rp(phi.phi.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = std::pow(phi.phi[k], expo);
        r[k] = (n - 1.0) * (n + 2.0 * f.f[k]);
        rp[k] = n * (n - 1.0) * (f.f[k] + 0.5);
    }
    out.v = {phi.phi.grid, std::move(v)};
    out.R = {phi.phi.grid, std::move(r)};
    out.R_printed = {phi.phi.grid, std::move(rp)};
    return out;
}

SphericalField nirenberg_residual(const SphericalField& v, const SphericalField& R, int n) {
    if (n < 3) throw InvalidArgument("nirenberg_residual: n >= 3 required");
    require_dimension(v.grid, n, "nirenberg_residual");
    check_finite(v, "nirenberg_residual");
    for (double x : v.values)
        if (x <= 0.0) throw FieldConstraintError("nirenberg_residual: v must be positive");
    const SphericalField lap = laplacian(v);
    const double c0 = n * (n - 2.0) / 4.0;
    const double c1 = (n - 2.0) / (4.0 * (n - 1.0));
    const double expo = (n + 2.0) / (n - 2.0);
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = -lap[k] + c0 * v[k] - c1 * R[k] * std::pow(v[k], expo);
    return {v.grid, std::move(out)};
}

} // namespace christoffel
