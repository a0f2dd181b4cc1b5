#include "iga/problems.hpp"

#include <cmath>

namespace iga {

RootMap bilinear_root(int id, Vec2 p00, Vec2 p10, Vec2 p01, Vec2 p11) {
    RootMap root;
    root.id = id;
    const std::vector<Dyadic> kv{Dyadic(0), Dyadic(0), Dyadic(1), Dyadic(1)};
    root.gx = SplineSpace1D(KnotVector(1, kv));
    root.gy = SplineSpace1D(KnotVector(1, kv));
    root.control = {p00, p10, p01, p11};
    return root;
}

namespace {

/// Polar angle measured counterclockwise from the positive x axis,
/// in [0, 2pi); the L-shape occupies [0, 3pi/2].
double lshape_angle(Vec2 x) {
    double phi = std::atan2(x.y, x.x);
    if (phi < 0.0) phi += 2.0 * M_PI;
    return phi;
}

double lshape_exact(Vec2 x) {
    const double r = std::hypot(x.x, x.y);
    if (r == 0.0) return 0.0;
    return std::pow(r, 2.0 / 3.0) * std::sin(2.0 / 3.0 * lshape_angle(x));
}

Vec2 lshape_exact_grad(Vec2 x) {
    const double r = std::hypot(x.x, x.y);
    if (r == 0.0) return {0.0, 0.0};
    const double phi = lshape_angle(x);
    const double c = 2.0 / 3.0 * std::pow(r, -1.0 / 3.0);
    return {-c * std::sin(phi / 3.0), c * std::cos(phi / 3.0)};
}

/// (-1,1)^2 minus the quadrant [0,1) x (-1,0): three unit-square patches
/// meeting at the reentrant corner in the origin.
MultiPatchGeometry lshape_geometry() {
    MultiPatchGeometry geo;
    geo.roots.push_back(bilinear_root(0, {-1, 0}, {0, 0}, {-1, 1}, {0, 1}));    // upper left
    geo.roots.push_back(bilinear_root(1, {0, 0}, {1, 0}, {0, 1}, {1, 1}));      // upper right
    geo.roots.push_back(bilinear_root(2, {-1, -1}, {0, -1}, {-1, 0}, {0, 0}));  // lower left
    geo.interfaces.push_back({0, Side::east, 1, Side::west, false});
    geo.interfaces.push_back({0, Side::south, 2, Side::north, false});
    const auto dirichlet = [&](int root, Side s) {
        geo.boundary_labels.push_back({root, s, "dirichlet"});
    };
    dirichlet(0, Side::west);
    dirichlet(0, Side::north);
    dirichlet(1, Side::south);
    dirichlet(1, Side::east);
    dirichlet(1, Side::north);
    dirichlet(2, Side::west);
    dirichlet(2, Side::south);
    dirichlet(2, Side::east);
    return geo;
}

MultiPatchGeometry checkerboard_geometry() {
    MultiPatchGeometry geo;
    geo.roots.push_back(bilinear_root(0, {0, 0}, {0.5, 0}, {0, 0.5}, {0.5, 0.5}));
    geo.roots.push_back(bilinear_root(1, {0.5, 0}, {1, 0}, {0.5, 0.5}, {1, 0.5}));
    geo.roots.push_back(bilinear_root(2, {0, 0.5}, {0.5, 0.5}, {0, 1}, {0.5, 1}));
    geo.roots.push_back(bilinear_root(3, {0.5, 0.5}, {1, 0.5}, {0.5, 1}, {1, 1}));
    geo.interfaces.push_back({0, Side::east, 1, Side::west, false});
    geo.interfaces.push_back({2, Side::east, 3, Side::west, false});
    geo.interfaces.push_back({0, Side::north, 2, Side::south, false});
    geo.interfaces.push_back({1, Side::north, 3, Side::south, false});
    const auto dirichlet = [&](int root, Side s) {
        geo.boundary_labels.push_back({root, s, "dirichlet"});
    };
    dirichlet(0, Side::west);
    dirichlet(0, Side::south);
    dirichlet(1, Side::south);
    dirichlet(1, Side::east);
    dirichlet(2, Side::west);
    dirichlet(2, Side::north);
    dirichlet(3, Side::east);
    dirichlet(3, Side::north);
    return geo;
}

}  // namespace

ProblemDef builtin_problem(const std::string& name) {
    ProblemDef def;
    def.name = name;
    if (name == "lshape_singular") {
        def.geometry = lshape_geometry();
        def.nu = Coefficient::constant(1.0);
        def.f = Coefficient::constant(0.0);
        def.dirichlet = lshape_exact;
        def.exact = lshape_exact;
        def.exact_grad = lshape_exact_grad;
        def.singular_point = Vec2{0.0, 0.0};
    } else if (name == "lshape_f1") {
        def.geometry = lshape_geometry();
        def.nu = Coefficient::constant(1.0);
        def.f = Coefficient::constant(1.0);
        def.dirichlet = [](Vec2) { return 0.0; };
        def.singular_point = Vec2{0.0, 0.0};
    } else if (name == "checkerboard") {
        def.geometry = checkerboard_geometry();
        def.nu = Coefficient::per_root({1.0, 1e4, 1e4, 1.0});
        def.f = Coefficient::constant(1.0);
        def.dirichlet = [](Vec2) { return 0.0; };
        def.singular_point = Vec2{0.5, 0.5};
    } else {
        throw Error("unknown problem '" + name + "'; available: lshape_singular, lshape_f1, "
                    "checkerboard");
    }
    return def;
}

std::vector<std::string> builtin_problem_names() {
    return {"lshape_singular", "lshape_f1", "checkerboard"};
}

}  // namespace iga
