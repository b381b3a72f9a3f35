#pragma once

#include "christoffel/core.hpp"

namespace christoffel {

/// Runtime certificates for the a priori bounds satisfied by solutions:
/// the C0 upper bound and max/min gap, the gradient ratio |D phi|/phi < 1
/// for even h-convex fields, the trace bound on eigenvalues of U, and the
/// full-rank (positive definiteness) monitor.
struct BoundsReport {
    bool c0_upper_ok = false;
    double c0_upper_bound = 0.0;  // ((2/n) max f + 1)^(1/2) + ((2/n) max f)^(1/2)
    double max_phi = 0.0;
    bool c0_gap_ok = false;
    double c0_gap_bound = 0.0;    // (max phi + 1/max phi)/2, must not exceed min phi
    double min_phi = 0.0;
    bool gradient_ok = false;
    double gradient_ratio = 0.0;  // max |D phi| / phi
    bool trace_applicable = false;
    bool trace_ok = false;
    double trace_margin = 0.0;    // min over nodes of f/phi - max eig U
    double full_rank_min_eig = 0.0;
    std::vector<double> sigma_profile; // min over nodes of sigma_l(U), l = 1..n

    bool all_ok() const {
        return c0_upper_ok && c0_gap_ok && gradient_ok && (trace_ok || !trace_applicable) &&
               full_rank_min_eig > 0.0;
    }
};

struct C0Check {
    bool upper_ok = false;
    bool gap_ok = false;
    double upper_bound = 0.0;
    double gap_bound = 0.0;
    double max_phi = 0.0;
    double min_phi = 0.0;
};

/// max phi <= ((2/n) max f + 1)^(1/2) + ((2/n) max f)^(1/2), and
/// (max phi + 1/max phi)/2 <= min phi (both with 1e-9 slack).
C0Check check_c0(const SupportField& phi, const PrescribedData& f, int n);

struct GradientCheck {
    bool ok = false;
    double max_ratio = 0.0;
};

/// |D phi| < phi pointwise; the hypothesis requires an even field, non-even
/// input is rejected.
GradientCheck check_gradient(const SupportField& phi);

struct TraceBoundCheck {
    bool applicable = false; // the bound is an identity consequence on solutions only
    bool ok = false;
    double margin = 0.0;
};

TraceBoundCheck check_trace_bound(const SupportField& phi, const PrescribedData& f, int n);

struct FullRankMonitor {
    double min_eig = 0.0;
    std::vector<double> sigma_profile; // min_x sigma_l(U), l = 1..n
};

FullRankMonitor full_rank_monitor(const SupportField& phi, int n);

/// All four checks in one report.
BoundsReport verify_bounds(const SupportField& phi, const PrescribedData& f, int n);

} // namespace christoffel
