#include "christoffel/pipeline.hpp"

#include <cmath>

#include "christoffel/errors.hpp"
#include "christoffel/estimates.hpp"
#include "christoffel/fexpr.hpp"
#include "christoffel/geometry.hpp"
#include "christoffel/io.hpp"
#include "christoffel/nirenberg.hpp"
#include "christoffel/util.hpp"

namespace christoffel {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct BuiltF {
    PrescribedData f;
    json info;
};

BuiltF build_f(const RunConfig& cfg, const GridPtr& grid) {
    BuiltF out;
    switch (cfg.f.kind) {
        case FSpec::Kind::Constant: {
            out.f = PrescribedData(SphericalField::constant(grid, cfg.f.constant));
            out.info["kind"] = "constant";
            out.info["gamma"] = cfg.f.constant;
            break;
        }
        case FSpec::Kind::Expression: {
            const auto expr = fexpr::Expression::parse(cfg.f.expression);
            out.f = PrescribedData(expr.evaluate(grid));
            out.info["kind"] = "expression";
            out.info["expression"] = cfg.f.expression;
            const auto p = expr.parity();
            out.info["parity"] = p == fexpr::Parity::Even  ? "even"
                                 : p == fexpr::Parity::Odd ? "odd"
                                                           : "unknown";
            break;
        }
        case FSpec::Kind::Csv: {
            out.f = PrescribedData(io::read_field_csv(cfg.f.csv_path, grid));
            out.info["kind"] = "csv";
            out.info["path"] = cfg.f.csv_path;
            break;
        }
        case FSpec::Kind::Generator: {
            const auto hexpr = fexpr::Expression::parse(cfg.f.generator_h);
            const SphericalField h = hexpr.evaluate(grid);
            double C = cfg.f.generator_c;
            if (cfg.f.generator_auto) C = find_admissible_c(h, cfg.n);
            out.f = generate_admissible_f(h, C);
            out.info["kind"] = "generator";
            out.info["h"] = cfg.f.generator_h;
            out.info["C"] = C;
            out.info["C_mode"] = cfg.f.generator_auto ? "auto" : "fixed";
            break;
        }
    }
    return out;
}

json config_json(const RunConfig& cfg) {
    json j;
    j["n"] = cfg.n;
    j["mode"] = cfg.mode == GridMode::FullS2 ? "full" : "axisymmetric";
    j["resolution"] = cfg.resolution;
    j["seed"] = cfg.seed;
    return j;
}

json admissibility_json(const AdmissibilityReport& rep) {
    json j;
    j["even_ok"] = rep.even_ok;
    j["even_deviation"] = rep.even_deviation;
    j["cond2_ok"] = rep.cond2_ok;
    j["cond2_min_eigenvalue"] = rep.cond2_min_eigenvalue;
    return j;
}

json bounds_json(const BoundsReport& rep) {
    json j;
    j["c0_upper_ok"] = rep.c0_upper_ok;
    j["c0_upper_bound"] = rep.c0_upper_bound;
    j["max_phi"] = rep.max_phi;
    j["c0_gap_ok"] = rep.c0_gap_ok;
    j["c0_gap_bound"] = rep.c0_gap_bound;
    j["min_phi"] = rep.min_phi;
    j["gradient_ok"] = rep.gradient_ok;
    j["gradient_ratio"] = rep.gradient_ratio;
    j["trace_applicable"] = rep.trace_applicable;
    j["trace_ok"] = rep.trace_ok;
    j["trace_margin"] = rep.trace_margin;
    j["full_rank_min_eig"] = rep.full_rank_min_eig;
    j["sigma_profile"] = rep.sigma_profile;
    return j;
}

std::string trace_csv(const SolveTrace& trace) {
    std::string out =
        "step,t,newton_iters,residual,min_phi,max_phi,min_eig_u,"
        "c0_upper_ok,c0_gap_ok,gradient_ok,trace_ok\n";
    for (const TraceRow& r : trace.rows) {
        out += std::to_string(r.step) + ',' + format_double(r.t) + ',' +
               std::to_string(r.newton_iters) + ',' + format_double(r.residual) + ',' +
               format_double(r.min_phi) + ',' + format_double(r.max_phi) + ',' +
               format_double(r.min_eig_u) + ',' + (r.c0_upper_ok ? '1' : '0');
        out += ',';
        out += r.c0_gap_ok ? '1' : '0';
        out += ',';
        out += r.gradient_ok ? '1' : '0';
        out += ',';
        out += r.trace_ok ? '1' : '0';
        out += '\n';
    }
    return out;
}

json trace_summary_json(const SolveTrace& trace) {
    json j;
    j["steps"] = trace.rows.empty() ? 0 : trace.rows.back().step;
    j["rows"] = trace.rows.size();
    if (!trace.rows.empty()) {
        const TraceRow& last = trace.rows.back();
        j["final_residual"] = last.residual;
        j["final_min_phi"] = last.min_phi;
        j["final_min_eig_u"] = last.min_eig_u;
        double min_eig_path = trace.rows.front().min_eig_u;
        int newton_total = 0;
        for (const TraceRow& r : trace.rows) {
            min_eig_path = std::min(min_eig_path, r.min_eig_u);
            newton_total += r.newton_iters;
        }
        j["min_eig_u_along_path"] = min_eig_path;
        j["newton_iterations_total"] = newton_total;
    }
    return j;
}

json identity_table_json(const SupportField& phi, int n) {
    json arr = json::array();
    for (int k = 0; k <= n - 1; ++k) {
        const IdentityCheck chk = integral_identity_check(phi, k, n);
        json j;
        j["k"] = chk.k;
        j["lhs"] = chk.lhs;
        j["rhs"] = chk.rhs;
        j["rhs_printed_coefficient"] = chk.rhs_printed;
        j["relative_gap"] = chk.relative_gap;
        arr.push_back(std::move(j));
    }
    return arr;
}

/// Writes content, records it in the manifest (paths relative to the out dir).
class ArtifactWriter {
public:
    explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::string& content) {
        io::atomic_write(dir_ / name, content);
        json entry;
        entry["file"] = name;
        entry["fnv1a64"] = to_hex(fnv1a64(content));
        manifest_.push_back(std::move(entry));
    }

    void note_external(const std::string& name) { // file written by another component
        json entry;
        entry["file"] = name;
        entry["fnv1a64"] = io::hash_hex_of_file(dir_ / name);
        manifest_.push_back(std::move(entry));
    }

    const fs::path& dir() const { return dir_; }
    json manifest() const { return manifest_; }

private:
    fs::path dir_;
    json manifest_ = json::array();
};

void finalize_report(ArtifactWriter& w, json& report, int exit_code) {
    report["exit_status"] = exit_code;
    report["manifest"] = w.manifest();
    io::atomic_write(w.dir() / "report.json", report.dump(2) + "\n");
}

struct SolveOutcome {
    GridPtr grid;
    PrescribedData f;
    SupportField phi;
    SolveTrace trace;
    BoundsReport bounds;
    bool certified = false;
    json report;
};

SolveOutcome solve_common(const RunConfig& cfg, bool force) {
    SolveOutcome out;
    out.grid = cfg.build_grid();
    BuiltF bf = build_f(cfg, out.grid);
    out.f = std::move(bf.f);

    out.report["command"] = "solve";
    out.report["config"] = config_json(cfg);
    out.report["f"] = bf.info;

    const AdmissibilityReport adm = check_conditions(out.f, cfg.n);
    out.report["admissibility"] = admissibility_json(adm);
    const bool admissible = adm.even_ok && adm.cond2_ok;
    if (!admissible && !force)
        throw SolveError("admissibility failed (even_ok=" + std::to_string(adm.even_ok) +
                         ", cond2_min_eigenvalue=" + format_double(adm.cond2_min_eigenvalue) +
                         "); rerun with --force to attempt the solve anyway");

    SolverOptions opts = cfg.solver;
    opts.skip_admissibility_check = true; // already evaluated above
    auto [phi, trace] = continuation_solve(out.f, cfg.n, opts);
    out.phi = std::move(phi);
    out.trace = std::move(trace);
    out.report["trace_summary"] = trace_summary_json(out.trace);

    out.bounds = verify_bounds(out.phi, out.f, cfg.n);
    out.report["bounds"] = bounds_json(out.bounds);
    out.report["identity_checks"] = identity_table_json(out.phi, cfg.n);

    bool path_positive = true;
    for (const TraceRow& r : out.trace.rows)
        if (r.min_eig_u <= 0.0) path_positive = false;
    double max_identity_gap = 0.0;
    for (const auto& row : out.report["identity_checks"])
        max_identity_gap = std::max(max_identity_gap, row["relative_gap"].get<double>());
    out.certified = admissible && out.bounds.all_ok() && path_positive &&
                    out.phi.min_phi > 1.0 && max_identity_gap < 1e-8;
    out.report["certified"] = out.certified;
    return out;
}

} // namespace

RunResult run_check(const RunConfig& cfg) {
    const GridPtr grid = cfg.build_grid();
    BuiltF bf = build_f(cfg, grid);
    const AdmissibilityReport adm = check_conditions(bf.f, cfg.n);

    RunResult res;
    res.report["command"] = "check";
    res.report["config"] = config_json(cfg);
    res.report["f"] = bf.info;
    res.report["admissibility"] = admissibility_json(adm);
    res.exit_code = (adm.even_ok && adm.cond2_ok) ? 0 : 1;

    ArtifactWriter w(cfg.out_dir);
    finalize_report(w, res.report, res.exit_code);
    return res;
}

RunResult run_solve(const RunConfig& cfg, bool force) {
    SolveOutcome out = solve_common(cfg, force);

    ArtifactWriter w(cfg.out_dir);
    w.write("grid.json", io::grid_json(*out.grid).dump(2) + "\n");
    w.write("solution.csv", io::field_csv(out.phi.phi));
    if (cfg.want_trace) w.write("trace.csv", trace_csv(out.trace));
    if (cfg.want_bounds) w.write("bounds.json", out.report["bounds"].dump(2) + "\n");
    if (cfg.want_mesh) {
        if (out.grid->mode() == GridMode::FullS2) {
            const EmbeddedHypersurface surf = embed(out.phi, cfg.n);
            export_ball_mesh(surf, w.dir() / "mesh.obj");
            w.note_external("mesh.obj");
        } else {
            out.report["mesh"] = "skipped (axisymmetric grid has no ball-model mesh export)";
        }
    }
    if (cfg.want_nirenberg) {
        if (cfg.n >= 3) {
            const NirenbergData nd = to_nirenberg(out.phi, out.f, cfg.n);
            w.write("nirenberg_v.csv", io::field_csv(nd.v));
            w.write("nirenberg_R.csv", io::field_csv(nd.R));
            json nj;
            nj["n"] = cfg.n;
            nj["convention"] = "R = (n-1)(n+2f)";
            nj["printed_convention"] = "R = n(n-1)(f+1/2)";
            nj["residual_inf"] = nirenberg_residual(nd.v, nd.R, cfg.n).max_abs();
            nj["residual_inf_printed"] = nirenberg_residual(nd.v, nd.R_printed, cfg.n).max_abs();
            w.write("nirenberg.json", nj.dump(2) + "\n");
            out.report["nirenberg"] = nj;
        } else {
            out.report["nirenberg"] = "skipped (requires n >= 3)";
        }
    }

    RunResult res;
    res.exit_code = out.certified ? 0 : 2;
    res.report = std::move(out.report);
    finalize_report(w, res.report, res.exit_code);
    return res;
}

RunResult run_reconstruct(const RunConfig& cfg, const std::optional<fs::path>& solution) {
    const GridPtr grid = cfg.build_grid();
    BuiltF bf = build_f(cfg, grid);
    const fs::path sol_path = solution.value_or(fs::path(cfg.out_dir) / "solution.csv");
    const SupportField phi(io::read_field_csv(sol_path, grid));

    RunResult res;
    res.report["command"] = "reconstruct";
    res.report["config"] = config_json(cfg);
    res.report["solution"] = sol_path.string();

    const EmbeddedHypersurface surf = embed(phi, cfg.n);
    const SphericalField chres = christoffel_residual(phi, bf.f, cfg.n);
    const DualityCheck duality = support_duality_check(phi, cfg.n);

    double worst_hyperboloid = 0.0;
    for (const auto& X : surf.point)
        worst_hyperboloid = std::max(worst_hyperboloid, std::abs(minkowski_dot(X, X) + 1.0));
    res.report["max_hyperboloid_defect"] = worst_hyperboloid;
    res.report["max_radii_sum_residual"] = chres.max_abs();
    res.report["duality_max_abs_deviation"] = duality.max_abs_deviation;
    res.report["duality_max_signed_deviation"] = duality.max_signed_deviation;

    ArtifactWriter w(cfg.out_dir);
    {
        const bool full = grid->mode() == GridMode::FullS2;
        std::string csv = full ? "theta,lambda,X1,X2,X3,X0,kappa_1,kappa_2,R_1,R_2\n"
                               : "theta,X_meridian,X_axis,X_time,kappa_rad,kappa_tan,R_rad,R_tan\n";
        for (std::size_t k = 0; k < grid->node_count(); ++k) {
            csv += format_double(grid->theta(k));
            if (full) csv += ',' + format_double(grid->lambda(k));
            if (full)
                csv += ',' + format_double(surf.point[k][0]) + ',' +
                       format_double(surf.point[k][1]) + ',' + format_double(surf.point[k][2]) +
                       ',' + format_double(surf.point[k][3]);
            else
                csv += ',' + format_double(surf.point[k][0]) + ',' +
                       format_double(surf.point[k][1]) + ',' + format_double(surf.point[k][3]);
            csv += ',' + format_double(surf.kappa1[k]) + ',' + format_double(surf.kappa2[k]) +
                   ',' + format_double(surf.radius1[k]) + ',' + format_double(surf.radius2[k]);
            csv += '\n';
        }
        w.write("geometry.csv", csv);
    }
    if (grid->mode() == GridMode::FullS2) {
        export_ball_mesh(surf, w.dir() / "mesh.obj");
        w.note_external("mesh.obj");
    } else {
        res.report["mesh"] = "skipped (axisymmetric grid has no ball-model mesh export)";
    }

    res.exit_code = 0;
    finalize_report(w, res.report, res.exit_code);
    return res;
}

RunResult run_nirenberg(const RunConfig& cfg) {
    if (cfg.n < 3)
        throw InvalidArgument("nirenberg: requires n >= 3 (axisymmetric mode)");
    RunConfig cfg2 = cfg;
    cfg2.want_nirenberg = true;
    return run_solve(cfg2, false);
}

RunResult run_verify(const RunConfig& cfg, const fs::path& solution) {
    const GridPtr grid = cfg.build_grid();
    BuiltF bf = build_f(cfg, grid);
    const SupportField phi(io::read_field_csv(solution, grid));

    RunResult res;
    res.report["command"] = "verify";
    res.report["config"] = config_json(cfg);
    res.report["solution"] = solution.string();
    res.report["f"] = bf.info;

    const double rnorm = residual(phi, bf.f, cfg.n).max_abs();
    res.report["residual_inf"] = rnorm;
    const AdmissibilityReport adm = check_conditions(bf.f, cfg.n);
    res.report["admissibility"] = admissibility_json(adm);
    const BoundsReport bounds = verify_bounds(phi, bf.f, cfg.n);
    res.report["bounds"] = bounds_json(bounds);

    double max_gap = 0.0;
    if (phi.min_phi > 1.0 && u_matrix(phi, cfg.n).min_eig_global > 0.0) {
        res.report["identity_checks"] = identity_table_json(phi, cfg.n);
        for (const auto& row : res.report["identity_checks"])
            max_gap = std::max(max_gap, row["relative_gap"].get<double>());
        const DualityCheck duality = support_duality_check(phi, cfg.n);
        res.report["duality_max_abs_deviation"] = duality.max_abs_deviation;
    } else {
        res.report["identity_checks"] = "skipped (field is not uniformly h-convex)";
    }

    const bool certified = rnorm <= 10.0 * cfg.solver.newton_tol && adm.even_ok && adm.cond2_ok &&
                           bounds.all_ok() && max_gap < 1e-8;
    res.report["certified"] = certified;
    res.exit_code = certified ? 0 : 2;

    ArtifactWriter w(cfg.out_dir);
    finalize_report(w, res.report, res.exit_code);
    return res;
}

} // namespace christoffel
