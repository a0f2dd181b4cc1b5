#pragma once

#include <iosfwd>
#include <string>

namespace iga {

/// Configuration error; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Run configuration, parsed from a flat "key = value" file
/// ('#' starts a comment).
struct Config {
    std::string problem = "lshape_singular";
    int degree = 2;
    double theta = 0.5;
    std::string mode = "adaptive";  // adaptive | uniform
    int max_dof = 10000;
    int max_levels = 25;
    int initial_knots = 0;  // unique knot values per direction; 0 = degree+1
    double solver_tol = 1e-12;
    std::string output_dir = "out";
    int quad_bump = 3;
    bool dump_matrices = false;

    /// Number of spans implied by initial_knots, rounded up to the next
    /// power of two so all knots stay dyadic.
    int initial_spans() const;
};

Config parse_config(std::istream& is);
Config parse_config_file(const std::string& path);

}  // namespace iga
