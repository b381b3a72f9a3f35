#include "christoffel/estimates.hpp"

#include <cmath>
#include <limits>

#include "christoffel/errors.hpp"
#include "christoffel/util.hpp"

namespace christoffel {

namespace {
constexpr double kSlack = 1e-9; // favorable-direction tolerance on the printed inequalities
} // namespace

C0Check check_c0(const SupportField& phi, const PrescribedData& f, int n) {
    C0Check out;
    out.max_phi = phi.max_phi;
    out.min_phi = phi.min_phi;
    const double q = (2.0 / n) * f.max_f;
    out.upper_bound = std::sqrt(q + 1.0) + std::sqrt(q);
    out.upper_ok = phi.max_phi <= out.upper_bound + kSlack;
    out.gap_bound = 0.5 * (phi.max_phi + 1.0 / phi.max_phi);
    out.gap_ok = out.gap_bound <= phi.min_phi + kSlack;
    return out;
}

GradientCheck check_gradient(const SupportField& phi) {
    if (!phi.is_even)
        throw FieldConstraintError("check_gradient: field is not even (deviation " +
                                   format_double(phi.even_deviation) + ")");
    const SphericalField g2 = gradient_squared(phi.phi);
    GradientCheck out;
    for (std::size_t k = 0; k < g2.size(); ++k)
        out.max_ratio = std::max(out.max_ratio, std::sqrt(g2[k]) / phi.phi[k]);
    out.ok = out.max_ratio < 1.0 - kSlack;
    return out;
}

TraceBoundCheck check_trace_bound(const SupportField& phi, const PrescribedData& f, int n) {
    TraceBoundCheck out;
    const SphericalField r = residual(phi, f, n);
    out.applicable = r.max_abs() <= 1e-6;
    if (!out.applicable) return out;
    const UMatrixField U = u_matrix(phi, n);
    double margin = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t k = 0; k < phi.phi.size(); ++k) {
        const double bound = f.f[k] / phi.phi[k];
        const double maxeig = U.max_eig_at(k);
        margin = std::min(margin, bound - maxeig);
        if (maxeig > bound + 1e-8) ok = false;
    }
    out.ok = ok;
    out.margin = margin;
    return out;
}

FullRankMonitor full_rank_monitor(const SupportField& phi, int n) {
    FullRankMonitor out;
    const UMatrixField U = u_matrix(phi, n);
    out.min_eig = U.min_eig_global;
    out.sigma_profile.resize(n);
    for (int l = 1; l <= n; ++l) {
        const SphericalField s = sigma_field(U, l);
        out.sigma_profile[l - 1] = s.min();
    }
    return out;
}

BoundsReport verify_bounds(const SupportField& phi, const PrescribedData& f, int n) {
    BoundsReport rep;
    const C0Check c0 = check_c0(phi, f, n);
    rep.c0_upper_ok = c0.upper_ok;
    rep.c0_upper_bound = c0.upper_bound;
    rep.max_phi = c0.max_phi;
    rep.c0_gap_ok = c0.gap_ok;
    rep.c0_gap_bound = c0.gap_bound;
    rep.min_phi = c0.min_phi;
    const GradientCheck gr = check_gradient(phi);
    rep.gradient_ok = gr.ok;
    rep.gradient_ratio = gr.max_ratio;
    const TraceBoundCheck tb = check_trace_bound(phi, f, n);
    rep.trace_applicable = tb.applicable;
    rep.trace_ok = tb.ok;
    rep.trace_margin = tb.margin;
    const FullRankMonitor fr = full_rank_monitor(phi, n);
    rep.full_rank_min_eig = fr.min_eig;
    rep.sigma_profile = fr.sigma_profile;
    return rep;
}

} // namespace christoffel
