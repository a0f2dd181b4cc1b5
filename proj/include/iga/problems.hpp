#pragma once

#include <functional>
#include <optional>
#include <string>

#include "iga/assembly.hpp"
#include "iga/geometry.hpp"

namespace iga {

/// Boundary value problem: geometry, coefficients, Dirichlet data and
/// (when known) the exact solution.
struct ProblemDef {
    std::string name;
    MultiPatchGeometry geometry;
    Coefficient nu;
    Coefficient f;
    std::function<double(Vec2)> dirichlet;
    std::function<double(Vec2)> exact;
    std::function<Vec2(Vec2)> exact_grad;
    std::optional<Vec2> singular_point;

    bool has_exact() const { return static_cast<bool>(exact); }
};

/// Bilinear (degree 1) root patch from its four corners.
RootMap bilinear_root(int id, Vec2 p00, Vec2 p10, Vec2 p01, Vec2 p11);

/// Built-in problems: lshape_singular, lshape_f1, checkerboard.
ProblemDef builtin_problem(const std::string& name);

std::vector<std::string> builtin_problem_names();

}  // namespace iga
