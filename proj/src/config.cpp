#include "christoffel/config.hpp"

#include <sstream>

#include "christoffel/errors.hpp"
#include "christoffel/io.hpp"

namespace christoffel {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw ParseError("expected a number, got '" + v + "'", line, 1);
}

int to_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (trim(v.substr(pos)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw ParseError("expected an integer, got '" + v + "'", line, 1);
}

} // namespace

GridPtr RunConfig::build_grid() const { return Grid::build(n, mode, resolution); }

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    int fspec_count = 0;
    bool artifacts_seen = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", line_no, 1);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no, 1);
        if (value.empty()) throw ParseError("empty value for key '" + key + "'", line_no,
                                            static_cast<int>(eq) + 2);

        if (key == "n") {
            cfg.n = to_int(value, line_no);
        } else if (key == "mode") {
            if (value == "full") cfg.mode = GridMode::FullS2;
            else if (value == "axisymmetric") cfg.mode = GridMode::Axisymmetric;
            else throw ParseError("mode must be 'full' or 'axisymmetric'", line_no, 1);
        } else if (key == "resolution") {
            cfg.resolution = to_int(value, line_no);
        } else if (key == "f.constant") {
            cfg.f.kind = FSpec::Kind::Constant;
            cfg.f.constant = to_double(value, line_no);
            ++fspec_count;
        } else if (key == "f.expression") {
            cfg.f.kind = FSpec::Kind::Expression;
            cfg.f.expression = value;
            ++fspec_count;
        } else if (key == "f.csv") {
            cfg.f.kind = FSpec::Kind::Csv;
            cfg.f.csv_path = value;
            ++fspec_count;
        } else if (key == "f.generator.h") {
            cfg.f.kind = FSpec::Kind::Generator;
            cfg.f.generator_h = value;
            ++fspec_count;
        } else if (key == "f.generator.c") {
            if (value == "auto") {
                cfg.f.generator_auto = true;
            } else {
                cfg.f.generator_auto = false;
                cfg.f.generator_c = to_double(value, line_no);
            }
        } else if (key == "solver.newton_tol") {
            cfg.solver.newton_tol = to_double(value, line_no);
        } else if (key == "solver.max_newton_iters") {
            cfg.solver.max_newton_iters = to_int(value, line_no);
        } else if (key == "solver.continuation_steps") {
            cfg.solver.continuation_steps = to_int(value, line_no);
        } else if (key == "solver.min_step") {
            cfg.solver.min_step = to_double(value, line_no);
        } else if (key == "solver.damping") {
            cfg.solver.damping = to_double(value, line_no);
        } else if (key == "solver.max_backtracks") {
            cfg.solver.max_backtracks = to_int(value, line_no);
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "seed") {
            cfg.seed = static_cast<unsigned long>(to_int(value, line_no));
        } else if (key == "artifacts") {
            artifacts_seen = true;
            cfg.want_trace = cfg.want_bounds = cfg.want_mesh = cfg.want_nirenberg = false;
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                tok = trim(tok);
                if (tok == "trace") cfg.want_trace = true;
                else if (tok == "bounds") cfg.want_bounds = true;
                else if (tok == "mesh") cfg.want_mesh = true;
                else if (tok == "nirenberg") cfg.want_nirenberg = true;
                else if (!tok.empty())
                    throw ParseError("unknown artifact '" + tok + "'", line_no, 1);
            }
        } else {
            throw ParseError("unknown key '" + key + "'", line_no, 1);
        }
    }
    (void)artifacts_seen;
    if (fspec_count == 0)
        throw ParseError("config must specify exactly one of f.constant, f.expression, f.csv, "
                         "f.generator.h (none given)");
    if (fspec_count > 1)
        throw ParseError("config must specify exactly one f specification (" +
                         std::to_string(fspec_count) + " given)");
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    return parse_config_text(io::read_file(path));
}

} // namespace christoffel
