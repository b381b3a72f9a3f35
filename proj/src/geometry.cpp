#include "christoffel/geometry.hpp"

#include <cmath>
#include <limits>

#include "christoffel/errors.hpp"
#include "christoffel/io.hpp"
#include "christoffel/util.hpp"

namespace christoffel {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void require_h_convex(const SupportField& phi, const UMatrixField& U, const char* where) {
    if (phi.min_phi <= 1.0)
        throw FieldConstraintError(std::string(where) + ": field is not h-convex (min phi " +
                                   format_double(phi.min_phi) + " <= 1)");
    if (U.min_eig_global <= 0.0) {
        // report an offending node for diagnostics
        std::size_t worst = 0;
        for (std::size_t k = 0; k < U.min_eig.size(); ++k)
            if (U.min_eig[k] < U.min_eig[worst]) worst = k;
        throw FieldConstraintError(
            std::string(where) + ": U[phi] is singular or indefinite (min eigenvalue " +
            format_double(U.min_eig_global) + " at theta=" + format_double(U.grid->theta(worst)) +
            ", lambda=" + format_double(U.grid->lambda(worst)) + ")");
    }
}

} // namespace

EmbeddedHypersurface embed(const SupportField& phi, int n) {
    require_dimension(phi.phi.grid, n, "embed");
    const UMatrixField U = u_matrix(phi, n);
    require_h_convex(phi, U, "embed");

    const Grid& g = *phi.phi.grid;
    const std::size_t count = g.node_count();
    EmbeddedHypersurface surf;
    surf.grid = phi.phi.grid;
    surf.n = n;
    surf.point.resize(count);
    surf.normal.resize(count);
    surf.cosh_r.resize(count);
    surf.v_dot_nu.resize(count);

    const GradientField grad = gradient(phi.phi);
    const bool full = g.mode() == GridMode::FullS2;
    for (std::size_t k = 0; k < count; ++k) {
        const double p = phi.phi[k];
        const double g2 = grad.squared_at(k);
        const double radial = 0.5 * (g2 / p + 1.0 / p) - 0.5 * p; // coefficient of x
        const double time = 0.5 * p + 0.5 * (g2 / p + 1.0 / p);
        std::array<double, 4> X{};
        if (full) {
            const double th = g.theta(k), lam = g.lambda(k);
            const double ct = std::cos(th), st = std::sin(th);
            const double cl = std::cos(lam), sl = std::sin(lam);
            const double x[3] = {st * cl, st * sl, ct};
            const double e_theta[3] = {ct * cl, ct * sl, -st};
            const double e_lambda[3] = {-sl, cl, 0.0};
            for (int d = 0; d < 3; ++d)
                X[d] = radial * x[d] - grad.comp_theta[k] * e_theta[d] -
                       grad.comp_lambda[k] * e_lambda[d];
        } else {
            const double ct = g.cos_theta(k), st = g.sin_theta(k);
            // reduced components: (meridian direction, axis)
            X[0] = radial * st - grad.comp_theta[k] * ct;
            X[1] = radial * ct + grad.comp_theta[k] * st;
        }
        X[3] = time;
        surf.point[k] = X;

        std::array<double, 4> nu = X;
        const double ip = 1.0 / p;
        if (full) {
            const double th = g.theta(k), lam = g.lambda(k);
            const double x[3] = {std::sin(th) * std::cos(lam), std::sin(th) * std::sin(lam),
                                 std::cos(th)};
            for (int d = 0; d < 3; ++d) nu[d] -= ip * x[d];
        } else {
            nu[0] -= ip * g.sin_theta(k);
            nu[1] -= ip * g.cos_theta(k);
        }
        nu[3] -= ip;
        surf.normal[k] = nu;

        surf.cosh_r[k] = 0.5 * g2 / p + 0.5 * (p + 1.0 / p);
        surf.v_dot_nu[k] = 0.5 * g2 / p + 0.5 * (p - 1.0 / p);
    }

    const ShapeData sh = shape(phi, n);
    surf.kappa1 = sh.kappa1;
    surf.kappa2 = sh.kappa2;
    surf.radius1 = sh.radius1;
    surf.radius2 = sh.radius2;
    return surf;
}

ShapeData shape(const SupportField& phi, int n) {
    require_dimension(phi.phi.grid, n, "shape");
    const UMatrixField U = u_matrix(phi, n);
    require_h_convex(phi, U, "shape");
    const std::size_t count = phi.phi.size();
    ShapeData out;
    out.kappa1.resize(count);
    out.kappa2.resize(count);
    out.radius1.resize(count);
    out.radius2.resize(count);
    const bool full = phi.phi.grid->mode() == GridMode::FullS2;
    for (std::size_t k = 0; k < count; ++k) {
        double lam1, lam2;
        if (full) {
            const double mean = 0.5 * (U.a_tt[k] + U.a_ll[k]);
            const double r = std::hypot(0.5 * (U.a_tt[k] - U.a_ll[k]), U.a_tl[k]);
            lam1 = mean - r;
            lam2 = mean + r;
        } else {
            lam1 = U.a_tt[k];
            lam2 = U.a_ll[k];
        }
        const double p = phi.phi[k];
        out.radius1[k] = p * lam1;
        out.radius2[k] = p * lam2;
        out.kappa1[k] = 1.0 + 1.0 / out.radius1[k];
        out.kappa2[k] = 1.0 + 1.0 / out.radius2[k];
    }
    return out;
}

SphericalField christoffel_residual(const SupportField& phi, const PrescribedData& f, int n) {
    const ShapeData sh = shape(phi, n);
    std::vector<double> r(phi.phi.size());
    const double mult = (phi.phi.grid->mode() == GridMode::FullS2) ? 1.0 : n - 1.0;
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] = sh.radius1[k] + mult * sh.radius2[k] - f.f[k];
    return {phi.phi.grid, std::move(r)};
}

IdentityCheck integral_identity_check(const SupportField& phi, int k, int n) {
    if (k < 0 || k > n - 1) throw InvalidArgument("integral_identity_check: k must be in [0, n-1]");
    require_dimension(phi.phi.grid, n, "integral_identity_check");
    const UMatrixField U = u_matrix(phi, n);
    require_h_convex(phi, U, "integral_identity_check");

    const SphericalField sig_k1 = sigma_field(U, k + 1);
    const SphericalField sig_k = sigma_field(U, k);
    const SphericalField g2 = gradient_squared(phi.phi);

    KahanSum lhs, base;
    for (std::size_t i = 0; i < phi.phi.size(); ++i) {
        const double p = phi.phi[i];
        const double w = phi.phi.grid->weight(i);
        const double pk = std::pow(p, k - n);
        lhs.add(w * pk * sig_k1[i]);
        const double bracket = 0.5 * g2[i] / p + 0.5 * (p - 1.0 / p);
        base.add(w * bracket * pk * sig_k[i]);
    }
    IdentityCheck out;
    out.k = k;
    out.lhs = lhs.value();
    const double ratio = binomial(n, k + 1) / binomial(n, k);
    out.rhs = ratio * base.value();
    out.rhs_printed = base.value() / ratio;
    out.relative_gap = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.lhs), 1e-300);
    return out;
}

DualityCheck support_duality_check(const SupportField& phi, int n) {
    const EmbeddedHypersurface surf = embed(phi, n);
    const Grid& g = *phi.phi.grid;
    const std::size_t count = g.node_count();
    const bool full = g.mode() == GridMode::FullS2;

    std::vector<double> deviation(count, 0.0);
    parallel_for(count, [&](std::size_t kx) {
        double best = -std::numeric_limits<double>::infinity();
        if (full) {
            std::array<double, 4> dir{};
            const auto d = g.direction(kx);
            dir = {d[0], d[1], d[2], 1.0};
            for (std::size_t ky = 0; ky < count; ++ky) {
                const double v = -minkowski_dot(surf.point[ky], dir);
                best = std::max(best, v);
            }
        } else {
            // sup over the revolution fiber is attained where the meridian
            // component aligns: max over <w_y, w_x> = +-1 of
            // tau - beta cos(theta_x) -+ alpha sin(theta_x)
            const double cx = g.cos_theta(kx), sx = g.sin_theta(kx);
            for (std::size_t ky = 0; ky < count; ++ky) {
                const double alpha = surf.point[ky][0];
                const double beta = surf.point[ky][1];
                const double tau = surf.point[ky][3];
                const double v = tau - beta * cx + std::abs(alpha) * sx;
                best = std::max(best, v);
            }
        }
        deviation[kx] = std::log(best) - std::log(phi.phi[kx]);
    });

    DualityCheck out;
    out.max_signed_deviation = -std::numeric_limits<double>::infinity();
    for (double d : deviation) {
        out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(d));
        out.max_signed_deviation = std::max(out.max_signed_deviation, d);
    }
    return out;
}

void export_ball_mesh(const EmbeddedHypersurface& surface, const std::filesystem::path& path) {
    const Grid& g = *surface.grid;
    if (g.mode() != GridMode::FullS2)
        throw InvalidArgument("export_ball_mesh: OBJ export requires a full-S2 grid");
    const int nlat = g.s2().nlat();
    const int nlon = g.s2().nlon();
    std::string obj;
    obj.reserve(surface.point.size() * 48);
    for (const auto& X : surface.point) {
        const double denom = 1.0 + X[3];
        obj += "v ";
        obj += format_double(X[0] / denom);
        obj += ' ';
        obj += format_double(X[1] / denom);
        obj += ' ';
        obj += format_double(X[2] / denom);
        obj += '\n';
    }
    // grid quads split along the fixed (i,j)-(i+1,j+1) diagonal
    for (int i = 0; i + 1 < nlat; ++i)
        for (int j = 0; j < nlon; ++j) {
            const int jn = (j + 1) % nlon;
            const int a = i * nlon + j + 1; // OBJ indices are 1-based
            const int b = (i + 1) * nlon + j + 1;
            const int c = (i + 1) * nlon + jn + 1;
            const int d = i * nlon + jn + 1;
            obj += "f " + std::to_string(a) + ' ' + std::to_string(b) + ' ' + std::to_string(c) +
                   '\n';
            obj += "f " + std::to_string(a) + ' ' + std::to_string(c) + ' ' + std::to_string(d) +
                   '\n';
        }
    io::atomic_write(path, obj);
}

} // namespace christoffel
