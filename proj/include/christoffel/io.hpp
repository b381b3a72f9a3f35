#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "christoffel/grid.hpp"

namespace christoffel::io {

/// Writes content to a temporary file in the target directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Field CSV: header "theta,lambda,value" (full-S2) or "theta,value"
/// (axisymmetric), one row per node in grid order, %.17g round-trip floats.
std::string field_csv(const SphericalField& f);
void write_field_csv(const std::filesystem::path& path, const SphericalField& f);

/// Reads a field written by write_field_csv back onto the given grid; node
/// coordinates must match the grid to 1e-9.
SphericalField read_field_csv(const std::filesystem::path& path, GridPtr grid);

/// Grid metadata as JSON (n, mode, resolution, node list, weights).
nlohmann::ordered_json grid_json(const Grid& grid);
void write_grid_json(const std::filesystem::path& path, const Grid& grid);

/// Rebuilds a grid from its JSON metadata (validates stored nodes/weights).
GridPtr read_grid_json(const std::filesystem::path& path);

std::string hash_hex_of_file(const std::filesystem::path& path);

} // namespace christoffel::io
