#pragma once

#include <utility>
#include <vector>

#include "christoffel/core.hpp"

namespace christoffel {

struct SolverOptions {
    double newton_tol = 1e-10;      // residual infinity-norm target
    int max_newton_iters = 30;
    int continuation_steps = 20;    // nominal number of homotopy steps
    double min_step = 1e-3;         // adaptive halving floor
    double damping = 0.5;           // backtracking factor
    int max_backtracks = 20;
    double phi_floor = 1.0 + 1e-6;  // trust constraint: min phi stays above this
    double ueig_floor = 1e-8;       // trust constraint: min eigenvalue of U stays above this
    double gmres_tol = 1e-12;       // relative 2-norm for the inner linear solve
    int gmres_max_iters = 300;
    bool skip_admissibility_check = false;

    void validate() const;
};

struct NewtonDiagnostics {
    bool converged = false;
    int iterations = 0;
    int max_backtracks_used = 0;
    int total_linear_iters = 0;
    std::vector<double> residual_history; // infinity norms, including the initial one
};

struct TraceRow {
    int step = 0;
    double t = 0.0;
    int newton_iters = 0;
    double residual = 0.0;
    double min_phi = 0.0;
    double max_phi = 0.0;
    double min_eig_u = 0.0;
    bool c0_upper_ok = false;
    bool c0_gap_ok = false;
    bool gradient_ok = false;
    bool trace_ok = false;
};

/// Homotopy / Newton diagnostics, one row per accepted continuation step.
struct SolveTrace {
    std::vector<TraceRow> rows;
};

/// Newton-Kantorovich iteration in the even subspace. Linear systems are solved
/// by GMRES preconditioned with the spectral inverse of (Lap + n) on even
/// harmonics, where that operator is invertible. Iterates are projected even
/// and kept inside the uniformly h-convex trust region by backtracking.
SupportField newton_solve(const PrescribedData& f, const SupportField& phi0, int n,
                          const SolverOptions& opts, NewtonDiagnostics* diag = nullptr);

/// Continuation along f_t from the exact constant solution at t = 0 to t = 1,
/// with adaptive step halving on Newton failure (doubling after two consecutive
/// easy successes, capped at the initial step).
std::pair<SupportField, SolveTrace> continuation_solve(const PrescribedData& f, int n,
                                                       const SolverOptions& opts);

/// (Lap + n)^-1 restricted to the even subspace, used as the Newton preconditioner.
std::vector<double> helmholtz_even_inverse(const GridPtr& grid, int n,
                                           std::span<const double> rhs);

} // namespace christoffel
