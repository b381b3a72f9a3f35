#include "christoffel/core.hpp"

#include <cmath>
#include <limits>

#include "christoffel/errors.hpp"
#include "christoffel/util.hpp"

namespace christoffel {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void require_positive(const SphericalField& f, const char* what) {
    check_finite(f, what);
    for (double v : f.values)
        if (v <= 0.0) throw FieldConstraintError(std::string(what) + ": field must be positive");
}

} // namespace

void require_dimension(const GridPtr& grid, int n, const char* where) {
    if (!grid) throw InvalidArgument(std::string(where) + ": missing grid");
    if (grid->dimension() != n)
        throw InvalidArgument(std::string(where) + ": dimension n does not match the grid");
}

SupportField::SupportField(SphericalField field) : phi(std::move(field)) {
    require_positive(phi, "support field");
    min_phi = phi.min();
    max_phi = phi.max();
    even_deviation = evenness_deviation(phi);
    is_even = even_deviation <= kEvenTol;
    is_above_one = min_phi > 1.0;
}

PrescribedData::PrescribedData(SphericalField field) : f(std::move(field)) {
    require_positive(f, "prescribed data");
    min_f = f.min();
    max_f = f.max();
}

std::vector<double> UMatrixField::eigenvalues_at(std::size_t k) const {
    std::vector<double> eig;
    if (grid->mode() == GridMode::FullS2) {
        const double mean = 0.5 * (a_tt[k] + a_ll[k]);
        const double r = std::hypot(0.5 * (a_tt[k] - a_ll[k]), a_tl[k]);
        eig = {mean - r, mean + r};
    } else {
        eig.assign(static_cast<std::size_t>(n), a_ll[k]);
        eig[0] = a_tt[k];
    }
    return eig;
}

double UMatrixField::max_eig_at(std::size_t k) const {
    if (grid->mode() == GridMode::FullS2) {
        const double mean = 0.5 * (a_tt[k] + a_ll[k]);
        const double r = std::hypot(0.5 * (a_tt[k] - a_ll[k]), a_tl[k]);
        return mean + r;
    }
    return std::max(a_tt[k], a_ll[k]);
}

double UMatrixField::trace_at(std::size_t k) const {
    if (grid->mode() == GridMode::FullS2) return a_tt[k] + a_ll[k];
    return a_tt[k] + (n - 1) * a_ll[k];
}

SphericalField sigma_field(const UMatrixField& U, int k) {
    if (k < 0 || k > U.n) throw InvalidArgument("sigma_field: k out of range");
    std::vector<double> out(U.grid->node_count());
    if (U.grid->mode() == GridMode::FullS2) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (k == 0) out[i] = 1.0;
            else if (k == 1) out[i] = U.a_tt[i] + U.a_ll[i];
            else out[i] = U.a_tt[i] * U.a_ll[i] - U.a_tl[i] * U.a_tl[i];
        }
    } else {
        // eigenvalues (a, b, b, ..., b): sigma_k = C(n-1,k) b^k + a C(n-1,k-1) b^(k-1)
        const int nu = U.n - 1;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double a = U.a_tt[i], b = U.a_ll[i];
            double v = binomial(nu, k) * std::pow(b, k);
            if (k >= 1) v += a * binomial(nu, k - 1) * std::pow(b, k - 1);
            out[i] = v;
        }
    }
    return {U.grid, std::move(out)};
}

SphericalField residual(const SupportField& phi, const PrescribedData& f, int n) {
    if (phi.phi.grid != f.f.grid) throw InvalidArgument("residual: phi and f live on different grids");
    return residual_raw(phi.phi, f.f, n);
}

SphericalField residual_raw(const SphericalField& phi, const SphericalField& f, int n) {
    require_dimension(phi.grid, n, "residual");
    for (double v : phi.values)
        if (!(v > 0.0)) throw FieldConstraintError("residual: phi must be positive");
    const SphericalField lap = laplacian(phi);
    const SphericalField g2 = gradient_squared(phi);
    std::vector<double> r(phi.size());
    const double half_n = 0.5 * n;
    for (std::size_t k = 0; k < r.size(); ++k) {
        const double p = phi[k];
        r[k] = lap[k] - half_n * g2[k] / p + half_n * (p - 1.0 / p) - f[k] / p;
    }
    return {phi.grid, std::move(r)};
}

UMatrixField u_matrix(const SupportField& phi, int n) {
    require_dimension(phi.phi.grid, n, "u_matrix");
    UMatrixField U;
    U.grid = phi.phi.grid;
    U.n = n;
    const FrameHessianField h = hessian(phi.phi);
    const SphericalField g2 = gradient_squared(phi.phi);
    const std::size_t count = phi.phi.size();
    U.a_tt.resize(count);
    U.a_ll.resize(count);
    if (U.grid->mode() == GridMode::FullS2) U.a_tl = h.a_tl;
    for (std::size_t k = 0; k < count; ++k) {
        const double p = phi.phi[k];
        const double shift = -0.5 * g2[k] / p + 0.5 * (p - 1.0 / p);
        U.a_tt[k] = h.a_tt[k] + shift;
        U.a_ll[k] = h.a_ll[k] + shift;
    }
    U.min_eig.resize(count);
    double global = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k) {
        double me;
        if (U.grid->mode() == GridMode::FullS2) {
            const double mean = 0.5 * (U.a_tt[k] + U.a_ll[k]);
            const double r = std::hypot(0.5 * (U.a_tt[k] - U.a_ll[k]), U.a_tl[k]);
            me = mean - r;
        } else {
            me = std::min(U.a_tt[k], U.a_ll[k]);
        }
        U.min_eig[k] = me;
        global = std::min(global, me);
    }
    U.min_eig_global = global;
    return U;
}

JacobianOperator::JacobianOperator(const SupportField& phi, const PrescribedData& f, int n)
    : grid_(phi.phi.grid), n_(n) {
    require_dimension(grid_, n, "linearize");
    grad_phi_ = gradient(phi.phi);
    const SphericalField g2 = gradient_squared(phi.phi);
    const std::size_t count = phi.phi.size();
    inv_phi_.resize(count);
    coeff_.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double p = phi.phi[k];
        const double ip = 1.0 / p;
        inv_phi_[k] = ip;
        coeff_[k] = 0.5 * n * g2[k] * ip * ip + 0.5 * n * (1.0 + ip * ip) + f.f[k] * ip * ip;
    }
}

SphericalField JacobianOperator::apply(const SphericalField& psi) const {
    if (psi.grid != grid_) throw InvalidArgument("jacobian apply: grid mismatch");
    return {grid_, apply_values(psi.values)};
}

std::vector<double> JacobianOperator::apply_values(std::span<const double> psi) const {
    SphericalField p{grid_, std::vector<double>(psi.begin(), psi.end())};
    const SphericalField lap = laplacian(p);
    const GradientField gpsi = gradient(p);
    std::vector<double> out(psi.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = lap[k] - n_ * grad_phi_.dot_at(k, gpsi) * inv_phi_[k] + coeff_[k] * psi[k];
    }
    return out;
}

JacobianOperator linearize(const SupportField& phi, const PrescribedData& f, int n) {
    return JacobianOperator(phi, f, n);
}

AdmissibilityReport check_conditions(const PrescribedData& f, int n) {
    require_dimension(f.f.grid, n, "check_conditions");
    AdmissibilityReport rep;
    rep.even_deviation = evenness_deviation(f.f);
    rep.even_ok = rep.even_deviation <= kEvenTol * std::max(1.0, f.f.max_abs());

    std::vector<double> gv(f.f.size());
    for (std::size_t k = 0; k < gv.size(); ++k) gv[k] = 1.0 / f.f[k];
    const SphericalField g{f.f.grid, std::move(gv)};
    const FrameHessianField hg = hessian(g);
    const SphericalField dg2 = gradient_squared(g);
    const double cdenom = (8.0 / n) * f.max_f + 2.0;

    double global = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double shift = -std::sqrt(dg2[k]) + g[k] / cdenom;
        double me;
        if (f.f.grid->mode() == GridMode::FullS2) {
            const double tt = hg.a_tt[k] + shift, ll = hg.a_ll[k] + shift;
            const double mean = 0.5 * (tt + ll);
            const double r = std::hypot(0.5 * (tt - ll), hg.a_tl[k]);
            me = mean - r;
        } else {
            me = std::min(hg.a_tt[k], hg.a_ll[k]) + shift;
        }
        global = std::min(global, me);
    }
    rep.cond2_min_eigenvalue = global;
    rep.cond2_ok = global >= -1e-10;
    return rep;
}

PrescribedData generate_admissible_f(const SphericalField& h, double C) {
    require_positive(h, "generator h");
    if (C < 0.0) throw InvalidArgument("generator constant C must be >= 0");
    std::vector<double> v(h.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = 1.0 / (1.0 / h[k] + C);
    return PrescribedData({h.grid, std::move(v)});
}

double find_admissible_c(const SphericalField& h, int n) {
    const auto passes = [&](double C) {
        const PrescribedData f = generate_admissible_f(h, C);
        const AdmissibilityReport rep = check_conditions(f, n);
        return rep.cond2_ok;
    };
    double hi = 1.0;
    double lo = 0.0;
    if (!passes(hi)) {
        while (!passes(hi)) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e12)
                throw SolveError("admissible C sweep did not terminate (is h even and smooth?)");
        }
    } else if (passes(0.0)) {
        return 0.0;
    }
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (passes(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

PrescribedData homotopy_f(const PrescribedData& f, double t) {
    if (t < 0.0 || t > 1.0) throw InvalidArgument("homotopy parameter t must lie in [0, 1]");
    std::vector<double> v(f.f.size());
    const double inv_max = 1.0 / f.max_f;
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = 1.0 / ((1.0 - t) * inv_max + t / f.f[k]);
    return PrescribedData({f.f.grid, std::move(v)});
}

SupportField constant_solution(GridPtr grid, double gamma, int n, const std::array<double, 3>& x0) {
    require_dimension(grid, n, "constant_solution");
    if (gamma <= 0.0) throw InvalidArgument("constant_solution: gamma must be positive");
    if (grid->mode() == GridMode::Axisymmetric && (x0[0] != 0.0 || x0[1] != 0.0))
        throw InvalidArgument("constant_solution: axisymmetric grids accept only axial x0");
    const double c = std::sqrt(1.0 + 2.0 * gamma / n);
    const double norm2 = x0[0] * x0[0] + x0[1] * x0[1] + x0[2] * x0[2];
    const double lead = std::sqrt(norm2 + 1.0);
    std::vector<double> v(grid->node_count());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto d = grid->direction(k);
        v[k] = c * (lead - (x0[0] * d[0] + x0[1] * d[1] + x0[2] * d[2]));
    }
    SupportField out({std::move(grid), std::move(v)});
    if (!out.is_above_one)
        throw FieldConstraintError("constant_solution: |x0| too large, phi dips to " +
                                   format_double(out.min_phi));
    return out;
}

} // namespace christoffel
