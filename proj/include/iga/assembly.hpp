#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "iga/basis.hpp"
#include "iga/geometry.hpp"
#include "iga/quadrature.hpp"

namespace iga {

/// Scalar coefficient: a single constant, one constant per root patch, or an
/// analytic function of the physical point. Discontinuities must align with
/// patch boundaries, which per-root constants guarantee.
class Coefficient {
public:
    Coefficient() : constant_(1.0) {}

    static Coefficient constant(double v);
    static Coefficient per_root(std::vector<double> values);
    static Coefficient analytic(std::function<double(Vec2)> f);

    double operator()(int root, Vec2 x) const;
    bool piecewise_constant() const { return !fn_; }

private:
    std::function<double(Vec2)> fn_;
    std::vector<double> per_root_;
    double constant_;
};

/// Reduced Galerkin system in the global basis.
struct LinearSystem {
    SparseMatrix A;  // n_global x n_global, symmetric
    std::vector<double> b;
    std::vector<std::pair<int, double>> dirichlet;  // (global DOF, value)
    std::vector<int> free_dofs;
    SparseMatrix A_reduced;
    std::vector<double> b_reduced;
};

/// Value and physical derivatives of a patch-wise spline field at one point.
struct FieldJet {
    double value = 0.0;
    Vec2 grad;
    double hess_xx = 0.0, hess_xy = 0.0, hess_yy = 0.0;

    double laplacian() const { return hess_xx + hess_yy; }
};

/// Evaluate the field with the given patch-local coefficients at patch
/// parameters (s,t); derivs in 0..2 selects how much of the jet is filled.
FieldJet eval_field(const MultiPatch& mp, int patch_id, std::span<const double> local_coeffs,
                    double s, double t, int derivs);

/// u_pw = B * u_global (patch-wise coefficients of a global function).
std::vector<double> patchwise_coefficients(const GlobalBasis& basis,
                                           const std::vector<double>& u_global);

/// Patch-local stiffness and load: a(u,v) = int nu grad u . grad v,
/// l(v) = int f v, by tensor Gauss quadrature over the knot spans.
std::pair<SparseMatrix, std::vector<double>> assemble_patch(const MultiPatch& mp, int patch_id,
                                                            const Coefficient& nu,
                                                            const Coefficient& f, int quad_order);

/// A = B^T blockdiag(A_k) B, b = B^T b_pw.
LinearSystem assemble_global(const MultiPatch& mp, const GlobalBasis& basis,
                             const Coefficient& nu, const Coefficient& f, int quad_order);

/// Fix boundary DOFs by per-edge 1D L2-projection of g with exact corner
/// interpolation; moves them to the right-hand side and builds the reduced
/// system over the free DOFs.
void apply_dirichlet(LinearSystem& system, const MultiPatch& mp, const GlobalBasis& basis,
                     const std::function<double(Vec2)>& g);

/// Full coefficient vector from the reduced solution plus boundary values.
std::vector<double> expand_solution(const LinearSystem& system,
                                    const std::vector<double>& x_reduced);

struct ErrorPair {
    double l2 = 0.0;
    double h1_semi = 0.0;
};

/// Element-wise quadrature of |u_h - u| and |grad u_h - grad u|; the order
/// is raised by quad_bump on patches touching the singular point.
ErrorPair compute_errors(const MultiPatch& mp, const GlobalBasis& basis,
                         const std::vector<double>& u_global,
                         const std::function<double(Vec2)>& u_exact,
                         const std::function<Vec2(Vec2)>& grad_exact, int quad_order,
                         std::optional<Vec2> singular_point = std::nullopt, int quad_bump = 3);

/// Patches with a corner at the given physical point.
std::vector<int> patches_touching(const MultiPatch& mp, Vec2 point, double tol = 1e-12);

}  // namespace iga
