#include "iga/config.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace iga {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config field '" + key + "': expected integer, got '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config field '" + key + "': expected number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config field '" + key + "': expected boolean, got '" + value + "'");
}

}  // namespace

int Config::initial_spans() const {
    const int knots = initial_knots > 0 ? initial_knots : degree + 1;
    const int spans = knots - 1;
    int pow2 = 1;
    while (pow2 < spans) pow2 *= 2;
    return pow2;
}

Config parse_config(std::istream& is) {
    Config cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "problem")
            cfg.problem = value;
        else if (key == "degree")
            cfg.degree = parse_int(key, value);
        else if (key == "theta")
            cfg.theta = parse_double(key, value);
        else if (key == "mode")
            cfg.mode = value;
        else if (key == "max_dof")
            cfg.max_dof = parse_int(key, value);
        else if (key == "max_levels")
            cfg.max_levels = parse_int(key, value);
        else if (key == "initial_knots_per_direction")
            cfg.initial_knots = parse_int(key, value);
        else if (key == "solver_tol")
            cfg.solver_tol = parse_double(key, value);
        else if (key == "output_dir")
            cfg.output_dir = value;
        else if (key == "quad_bump")
            cfg.quad_bump = parse_int(key, value);
        else if (key == "dump_matrices")
            cfg.dump_matrices = parse_bool(key, value);
        else
            throw ConfigError("config field '" + key + "' is not recognized");
    }

    if (cfg.degree < 1 || cfg.degree > 6)
        throw ConfigError("config field 'degree': must be between 1 and 6");
    if (!(cfg.theta > 0.0 && cfg.theta <= 1.0))
        throw ConfigError("config field 'theta': must be in (0, 1]");
    if (cfg.mode != "adaptive" && cfg.mode != "uniform")
        throw ConfigError("config field 'mode': must be 'adaptive' or 'uniform'");
    if (cfg.max_dof < 1) throw ConfigError("config field 'max_dof': must be positive");
    if (cfg.max_levels < 0) throw ConfigError("config field 'max_levels': must be non-negative");
    if (cfg.initial_knots != 0 && cfg.initial_knots < 2)
        throw ConfigError("config field 'initial_knots_per_direction': must be at least 2");
    if (!(cfg.solver_tol > 0.0))
        throw ConfigError("config field 'solver_tol': must be positive");
    if (cfg.quad_bump < 0)
        throw ConfigError("config field 'quad_bump': must be non-negative");
    return cfg;
}

Config parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config file '" + path + "' cannot be opened");
    return parse_config(is);
}

}  // namespace iga
