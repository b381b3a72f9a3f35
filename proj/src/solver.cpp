#include "christoffel/solver.hpp"

#include <cmath>
#include <functional>

#include "christoffel/errors.hpp"
#include "christoffel/estimates.hpp"
#include "christoffel/util.hpp"

namespace christoffel {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void symmetrize_even_values(const Grid& grid, std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = 0.5 * (v[k] + v[grid.antipodal(k)]);
    v = std::move(out);
}

using ApplyFn = std::function<std::vector<double>(std::span<const double>)>;

/// Right-preconditioned GMRES (full, no restart): solves A M x' = b, x = M x'.
std::vector<double> gmres(const ApplyFn& A, const ApplyFn& M, std::span<const double> b,
                          double rel_tol, int max_iters, int& iters_used) {
    const std::size_t N = b.size();
    const double bnorm = norm2(b);
    iters_used = 0;
    if (bnorm == 0.0) return std::vector<double>(N, 0.0);

    const int m = max_iters;
    std::vector<std::vector<double>> V;
    V.emplace_back(b.begin(), b.end());
    for (auto& x : V[0]) x /= bnorm;

    std::vector<std::vector<double>> H; // H[j] holds rotated column j (length j+2)
    std::vector<double> cs, sn;
    std::vector<double> g{bnorm};

    int klast = -1;
    for (int j = 0; j < m; ++j) {
        std::vector<double> w = A(M(V[j]));
        std::vector<double> h(static_cast<std::size_t>(j) + 2, 0.0);
        for (int i = 0; i <= j; ++i) { // modified Gram-Schmidt
            h[i] = dot(w, V[i]);
            for (std::size_t k = 0; k < N; ++k) w[k] -= h[i] * V[i][k];
        }
        const double hsub = norm2(w);
        h[j + 1] = hsub;

        for (int i = 0; i < j; ++i) {
            const double tmp = cs[i] * h[i] + sn[i] * h[i + 1];
            h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
            h[i] = tmp;
        }
        const double denom = std::hypot(h[j], h[j + 1]);
        if (denom == 0.0)
            throw LinearSolveError("linear solve stagnation: singular Hessenberg column");
        const double c = h[j] / denom;
        const double s = h[j + 1] / denom;
        cs.push_back(c);
        sn.push_back(s);
        h[j] = denom;
        h[j + 1] = 0.0;
        g.push_back(-s * g[j]);
        g[j] = c * g[j];
        H.push_back(std::move(h));
        iters_used = j + 1;
        klast = j;

        const double res = std::abs(g[j + 1]);
        if (res <= rel_tol * bnorm || hsub == 0.0 || j == m - 1) break;
        std::vector<double> vnext = std::move(w);
        for (auto& x : vnext) x /= hsub;
        V.push_back(std::move(vnext));
    }

    const int k = klast;
    std::vector<double> y(static_cast<std::size_t>(k) + 1, 0.0);
    for (int i = k; i >= 0; --i) {
        double acc = g[i];
        for (int jj = i + 1; jj <= k; ++jj) acc -= H[jj][i] * y[jj];
        y[i] = acc / H[i][i];
    }
    std::vector<double> xk(N, 0.0);
    for (int i = 0; i <= k; ++i)
        for (std::size_t q = 0; q < N; ++q) xk[q] += y[i] * V[i][q];

    const double final_res = std::abs(g[k + 1]);
    if (final_res > std::max(1e-8 * bnorm, 10.0 * rel_tol * bnorm) && final_res > rel_tol * bnorm)
        throw LinearSolveError("linear solve stagnation: relative residual " +
                               format_double(final_res / bnorm) + " after " +
                               std::to_string(iters_used) + " iterations");
    return M(xk);
}

void require_even(const SphericalField& f, const char* what) {
    const double dev = evenness_deviation(f);
    if (dev > kEvenTol * std::max(1.0, f.max_abs()))
        throw FieldConstraintError(std::string(what) + ": field is not even (deviation " +
                                   format_double(dev) + ")");
}

TraceRow make_trace_row(int step, double t, const SupportField& phi, const PrescribedData& ft,
                        int n, const NewtonDiagnostics& diag) {
    TraceRow row;
    row.step = step;
    row.t = t;
    row.newton_iters = diag.iterations;
    row.residual = diag.residual_history.empty() ? 0.0 : diag.residual_history.back();
    row.min_phi = phi.min_phi;
    row.max_phi = phi.max_phi;
    row.min_eig_u = u_matrix(phi, n).min_eig_global;
    const C0Check c0 = check_c0(phi, ft, n);
    row.c0_upper_ok = c0.upper_ok;
    row.c0_gap_ok = c0.gap_ok;
    row.gradient_ok = check_gradient(phi).ok;
    const TraceBoundCheck tb = check_trace_bound(phi, ft, n);
    row.trace_ok = tb.applicable ? tb.ok : false;
    return row;
}

} // namespace

void SolverOptions::validate() const {
    if (newton_tol <= 0.0 || min_step <= 0.0 || gmres_tol <= 0.0)
        throw InvalidArgument("solver tolerances must be positive");
    if (damping <= 0.0 || damping >= 1.0)
        throw InvalidArgument("damping factor must lie in (0, 1)");
    if (max_newton_iters < 1 || continuation_steps < 1 || max_backtracks < 1 ||
        gmres_max_iters < 1)
        throw InvalidArgument("solver iteration limits must be positive");
}

std::vector<double> helmholtz_even_inverse(const GridPtr& grid, int n,
                                           std::span<const double> rhs) {
    if (grid->mode() == GridMode::FullS2) return grid->s2().invert_helmholtz_even(rhs, n);
    return grid->zonal().invert_helmholtz_even(rhs, n);
}

SupportField newton_solve(const PrescribedData& f, const SupportField& phi0, int n,
                          const SolverOptions& opts, NewtonDiagnostics* diag) {
    opts.validate();
    require_dimension(phi0.phi.grid, n, "newton_solve");
    if (phi0.phi.grid != f.f.grid)
        throw InvalidArgument("newton_solve: phi0 and f live on different grids");
    require_even(f.f, "newton_solve: f");
    if (!phi0.is_even)
        throw FieldConstraintError("newton_solve: initial guess is not even (deviation " +
                                   format_double(phi0.even_deviation) + ")");
    if (phi0.min_phi <= 1.0)
        throw FieldConstraintError("newton_solve: initial guess must satisfy phi > 1");

    const Grid& grid = *phi0.phi.grid;
    NewtonDiagnostics local;
    NewtonDiagnostics& d = diag ? *diag : local;
    d = NewtonDiagnostics{};

    SupportField phi = phi0;
    SphericalField res = residual(phi, f, n);
    double rnorm = res.max_abs();
    d.residual_history.push_back(rnorm);

    while (rnorm >= opts.newton_tol) {
        if (d.iterations >= opts.max_newton_iters)
            throw SolveError("newton_solve: no convergence in " +
                             std::to_string(opts.max_newton_iters) +
                             " iterations (residual " + format_double(rnorm) + ")");

        const JacobianOperator J = linearize(phi, f, n);
        const ApplyFn A = [&](std::span<const double> v) {
            std::vector<double> out = J.apply_values(v);
            symmetrize_even_values(grid, out);
            return out;
        };
        const ApplyFn M = [&](std::span<const double> v) {
            return helmholtz_even_inverse(phi.phi.grid, n, v);
        };
        // the even projection of the operator can only match the even part of
        // the right-hand side; the odd content of the residual is roundoff
        std::vector<double> rhs(res.values.size());
        for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = -res.values[k];
        symmetrize_even_values(grid, rhs);
        int lin_iters = 0;
        const std::vector<double> delta = gmres(A, M, rhs, opts.gmres_tol, opts.gmres_max_iters,
                                                lin_iters);
        d.total_linear_iters += lin_iters;

        double alpha = 1.0;
        bool accepted = false;
        SupportField trial;
        SphericalField trial_res;
        double trial_norm = 0.0;
        int backtracks = 0;
        for (; backtracks <= opts.max_backtracks; ++backtracks) {
            std::vector<double> cand(phi.phi.values);
            for (std::size_t k = 0; k < cand.size(); ++k) cand[k] += alpha * delta[k];
            symmetrize_even_values(grid, cand);
            double cmin = cand[0];
            for (double v : cand) cmin = std::min(cmin, v);
            if (cmin > opts.phi_floor) {
                SupportField c(SphericalField{phi.phi.grid, std::move(cand)});
                if (u_matrix(c, n).min_eig_global > opts.ueig_floor) {
                    SphericalField r = residual(c, f, n);
                    const double rn = r.max_abs();
                    if (rn < rnorm) {
                        trial = std::move(c);
                        trial_res = std::move(r);
                        trial_norm = rn;
                        accepted = true;
                        break;
                    }
                }
            }
            alpha *= opts.damping;
        }
        if (!accepted)
            throw SolveError("newton_solve: damping exhausted after " +
                             std::to_string(opts.max_backtracks) +
                             " backtracks (trust constraints or non-descent)");
        d.max_backtracks_used = std::max(d.max_backtracks_used, backtracks);
        phi = std::move(trial);
        res = std::move(trial_res);
        rnorm = trial_norm;
        d.residual_history.push_back(rnorm);
        ++d.iterations;
    }

    d.converged = true;
    return phi;
}

std::pair<SupportField, SolveTrace> continuation_solve(const PrescribedData& f, int n,
                                                       const SolverOptions& opts) {
    opts.validate();
    require_dimension(f.f.grid, n, "continuation_solve");
    if (!opts.skip_admissibility_check) {
        const AdmissibilityReport rep = check_conditions(f, n);
        if (!rep.even_ok)
            throw SolveError("continuation_solve: f is not even (deviation " +
                             format_double(rep.even_deviation) + ")");
        if (!rep.cond2_ok)
            throw SolveError(
                "continuation_solve: admissibility matrix is not positive semi-definite "
                "(min eigenvalue " +
                format_double(rep.cond2_min_eigenvalue) + ")");
    }

    SolveTrace trace;
    const double c0 = std::sqrt(1.0 + (2.0 / n) * f.max_f);
    SupportField phi(SphericalField::constant(f.f.grid, c0));

    // t = 0: the constant is the exact even solution for f_0 = max f
    {
        const PrescribedData f0 = homotopy_f(f, 0.0);
        NewtonDiagnostics diag;
        phi = newton_solve(f0, phi, n, opts, &diag);
        trace.rows.push_back(make_trace_row(0, 0.0, phi, f0, n, diag));
    }

    const bool constant_f = (f.max_f - f.min_f) <= 1e-14 * f.max_f;
    const double dt0 = constant_f ? 1.0 : 1.0 / opts.continuation_steps;
    double dt = dt0;
    double t = 0.0;
    int step = 0;
    int easy_successes = 0;
    while (t < 1.0) {
        const double t_try = std::min(1.0, t + dt);
        const PrescribedData ft = homotopy_f(f, t_try);
        try {
            NewtonDiagnostics diag;
            SupportField next = newton_solve(ft, phi, n, opts, &diag);
            phi = std::move(next);
            t = t_try;
            ++step;
            trace.rows.push_back(make_trace_row(step, t, phi, ft, n, diag));
            if (diag.max_backtracks_used <= 1) {
                if (++easy_successes >= 2) {
                    dt = std::min(2.0 * dt, dt0);
                    easy_successes = 0;
                }
            } else {
                easy_successes = 0;
            }
        } catch (const SolveError&) {
            dt *= 0.5;
            easy_successes = 0;
            if (dt < opts.min_step)
                throw SolveError("continuation stall: step underflow at t = " + format_double(t));
        }
    }
    return {phi, trace};
}

} // namespace christoffel
