#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "christoffel/config.hpp"

namespace christoffel {

/// Exit-status contract: 0 = certified, 2 = solved but uncertified (a bound
/// check failed), 1 = failure (reported via exceptions by the run_* functions
/// where no report can be produced).
struct RunResult {
    int exit_code = 1;
    nlohmann::ordered_json report;
};

/// Admissibility only; exit 0 iff both conditions pass.
RunResult run_check(const RunConfig& cfg);

/// Continuation solve + bound certificates + integral-identity table + artifacts.
RunResult run_solve(const RunConfig& cfg, bool force = false);

/// Embed a solved field, export geometry tables and the ball-model mesh.
RunResult run_reconstruct(const RunConfig& cfg,
                          const std::optional<std::filesystem::path>& solution = std::nullopt);

/// Solve (axisymmetric, n >= 3), transform to the prescribed-scalar-curvature
/// equation, verify the residual under both curvature conventions.
RunResult run_nirenberg(const RunConfig& cfg);

/// Re-verify a stored solution: residual, bounds, identities, duality.
RunResult run_verify(const RunConfig& cfg, const std::filesystem::path& solution);

} // namespace christoffel
