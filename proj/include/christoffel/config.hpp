#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "christoffel/grid.hpp"
#include "christoffel/solver.hpp"

namespace christoffel {

/// Prescribed-data specification: exactly one of the four forms.
struct FSpec {
    enum class Kind { Constant, Expression, Csv, Generator };
    Kind kind = Kind::Constant;
    double constant = 1.0;
    std::string expression;
    std::string csv_path;
    std::string generator_h;       // expression for h in f = (h^-1 + C)^-1
    bool generator_auto = true;    // C chosen by the doubling + bisection sweep
    double generator_c = 0.0;
};

/// Run configuration, read from a key = value file ('#' comments allowed).
///
/// Keys: n, mode (full | axisymmetric), resolution,
///       f.constant | f.expression | f.csv | f.generator.h [+ f.generator.c],
///       solver.newton_tol, solver.max_newton_iters, solver.continuation_steps,
///       solver.min_step, solver.damping, solver.max_backtracks,
///       out, artifacts (comma list of trace, bounds, mesh, nirenberg), seed.
struct RunConfig {
    int n = 2;
    GridMode mode = GridMode::FullS2;
    int resolution = 16;
    FSpec f;
    SolverOptions solver;
    std::string out_dir = "out";
    bool want_trace = true;
    bool want_bounds = true;
    bool want_mesh = false;
    bool want_nirenberg = false;
    unsigned long seed = 0;

    GridPtr build_grid() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

} // namespace christoffel
