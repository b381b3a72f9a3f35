#include "christoffel/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "christoffel/errors.hpp"
#include "christoffel/util.hpp"

namespace christoffel::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok, int line_no, int col) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size() && tok.find_first_not_of(" \t\r", pos) != std::string::npos)
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid number '" + tok + "'", line_no, col);
    }
}

} // namespace

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string());
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string field_csv(const SphericalField& f) {
    const Grid& g = *f.grid;
    std::string out;
    const bool full = g.mode() == GridMode::FullS2;
    out += full ? "theta,lambda,value\n" : "theta,value\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        out += format_double(g.theta(k));
        if (full) {
            out += ',';
            out += format_double(g.lambda(k));
        }
        out += ',';
        out += format_double(f.values[k]);
        out += '\n';
    }
    return out;
}

void write_field_csv(const std::filesystem::path& path, const SphericalField& f) {
    atomic_write(path, field_csv(f));
}

SphericalField read_field_csv(const std::filesystem::path& path, GridPtr grid) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    const bool full = grid->mode() == GridMode::FullS2;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty field CSV", 1, 1);
    const std::string want = full ? "theta,lambda,value" : "theta,value";
    if (line.size() >= 1 && line.back() == '\r') line.pop_back();
    if (line != want)
        throw ParseError("field CSV header must be '" + want + "', got '" + line + "'", 1, 1);

    std::vector<double> values;
    values.reserve(grid->node_count());
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto toks = split_csv_line(line);
        const std::size_t want_cols = full ? 3 : 2;
        if (toks.size() != want_cols)
            throw ParseError("expected " + std::to_string(want_cols) + " columns", line_no, 1);
        const std::size_t k = values.size();
        if (k >= grid->node_count()) throw ParseError("more rows than grid nodes", line_no, 1);
        const double theta = parse_double(toks[0], line_no, 1);
        if (std::abs(theta - grid->theta(k)) > 1e-9)
            throw ParseError("theta does not match grid node " + std::to_string(k), line_no, 1);
        if (full) {
            const double lam = parse_double(toks[1], line_no, 2);
            if (std::abs(lam - grid->lambda(k)) > 1e-9)
                throw ParseError("lambda does not match grid node " + std::to_string(k), line_no, 2);
        }
        values.push_back(parse_double(toks[full ? 2 : 1], line_no, full ? 3 : 2));
    }
    if (values.size() != grid->node_count())
        throw ParseError("field CSV has " + std::to_string(values.size()) + " rows, grid needs " +
                         std::to_string(grid->node_count()));
    return SphericalField(std::move(grid), std::move(values));
}

nlohmann::ordered_json grid_json(const Grid& grid) {
    nlohmann::ordered_json j;
    j["n"] = grid.dimension();
    j["mode"] = grid.mode() == GridMode::FullS2 ? "full" : "axisymmetric";
    j["resolution"] = grid.resolution();
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    nlohmann::ordered_json weights = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        if (grid.mode() == GridMode::FullS2)
            nodes.push_back({grid.theta(k), grid.lambda(k)});
        else
            nodes.push_back({grid.theta(k)});
        weights.push_back(grid.weight(k));
    }
    j["nodes"] = std::move(nodes);
    j["weights"] = std::move(weights);
    return j;
}

void write_grid_json(const std::filesystem::path& path, const Grid& grid) {
    atomic_write(path, grid_json(grid).dump(2) + "\n");
}

GridPtr read_grid_json(const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("grid JSON: ") + e.what());
    }
    const int n = j.at("n").get<int>();
    const std::string mode = j.at("mode").get<std::string>();
    const int resolution = j.at("resolution").get<int>();
    GridPtr grid = Grid::build(n, mode == "full" ? GridMode::FullS2 : GridMode::Axisymmetric,
                               resolution);
    const auto& nodes = j.at("nodes");
    if (nodes.size() != grid->node_count())
        throw ParseError("grid JSON node count does not match (" + std::to_string(nodes.size()) +
                         " vs " + std::to_string(grid->node_count()) + ")");
    for (std::size_t k = 0; k < grid->node_count(); ++k)
        if (std::abs(nodes[k][0].get<double>() - grid->theta(k)) > 1e-9)
            throw ParseError("grid JSON node " + std::to_string(k) + " does not match");
    return grid;
}

std::string hash_hex_of_file(const std::filesystem::path& path) {
    return to_hex(fnv1a64(read_file(path)));
}

} // namespace christoffel::io
