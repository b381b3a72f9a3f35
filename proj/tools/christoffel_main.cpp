// Command-line driver: solve and certify the Christoffel problem in hyperbolic
// space from a config file, reconstruct hypersurfaces, and bridge to the
// prescribed-scalar-curvature equation. Exit codes: 0 certified, 2 solved but
// uncertified, 1 failure.
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "christoffel/errors.hpp"
#include "christoffel/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int resolution = 0;
    long seed = -1;
    bool force = false;
    std::string solution;
};

christoffel::RunConfig load_config(const CommonArgs& args) {
    christoffel::RunConfig cfg = christoffel::parse_config_file(args.config_path);
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.resolution > 0) cfg.resolution = args.resolution;
    if (args.seed >= 0) cfg.seed = static_cast<unsigned long>(args.seed);
    return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_force, bool with_solution) {
    cmd->add_option("--config", args.config_path, "config file (key = value format)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--resolution", args.resolution,
                    "grid resolution override (spectral degree L or node count M)");
    cmd->add_option("--seed", args.seed, "seed recorded in reports (overrides config)");
    if (with_force)
        cmd->add_flag("--force", args.force, "attempt the solve even if admissibility fails");
    if (with_solution)
        cmd->add_option("--solution", args.solution, "solution CSV (default: <out>/solution.csv)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and verifier for the Christoffel problem on uniformly "
                 "h-convex hypersurfaces in hyperbolic space"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* cmd_check = app.add_subcommand("check", "evaluate admissibility of f");
    add_common(cmd_check, args, false, false);
    CLI::App* cmd_solve =
        app.add_subcommand("solve", "continuation solve with certificates and artifacts");
    add_common(cmd_solve, args, true, false);
    CLI::App* cmd_reconstruct =
        app.add_subcommand("reconstruct", "embed a solution and export geometry/mesh");
    add_common(cmd_reconstruct, args, false, true);
    CLI::App* cmd_nirenberg = app.add_subcommand(
        "nirenberg", "solve and transform to the prescribed-scalar-curvature equation (n >= 3)");
    add_common(cmd_nirenberg, args, false, false);
    CLI::App* cmd_verify = app.add_subcommand("verify", "re-verify a stored solution");
    add_common(cmd_verify, args, false, true);

    CLI11_PARSE(app, argc, argv);

    try {
        const christoffel::RunConfig cfg = load_config(args);
        christoffel::RunResult result;
        if (app.got_subcommand(cmd_check)) {
            result = christoffel::run_check(cfg);
        } else if (app.got_subcommand(cmd_solve)) {
            result = christoffel::run_solve(cfg, args.force);
        } else if (app.got_subcommand(cmd_reconstruct)) {
            std::optional<std::filesystem::path> sol;
            if (!args.solution.empty()) sol = args.solution;
            result = christoffel::run_reconstruct(cfg, sol);
        } else if (app.got_subcommand(cmd_nirenberg)) {
            result = christoffel::run_nirenberg(cfg);
        } else {
            const std::filesystem::path sol = args.solution.empty()
                                                  ? std::filesystem::path(cfg.out_dir) / "solution.csv"
                                                  : std::filesystem::path(args.solution);
            result = christoffel::run_verify(cfg, sol);
        }
        std::printf("%s\n", result.report.dump(2).c_str());
        return result.exit_code;
    } catch (const christoffel::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 1;
    } catch (const christoffel::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
