#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "iga/assembly.hpp"
#include "iga/problems.hpp"
#include "iga/solver.hpp"

namespace iga {

/// Per-patch residual estimator values; eta_sq = interior + jump parts.
struct EstimateResult {
    std::vector<double> eta_sq;
    std::vector<double> interior_part;
    std::vector<double> jump_part;
    double total_eta = 0.0;  // sqrt of the sum of eta_sq
};

/// Residual estimator: h_k^2 ||f + div(nu grad u_h)||^2 on each patch plus
/// h_k/2 times the squared normal-flux jumps over its edges. Requires a
/// patch-wise constant diffusion coefficient.
EstimateResult estimate(const MultiPatch& mp, const GlobalBasis& basis,
                        const std::vector<double>& u_global, const Coefficient& nu,
                        const Coefficient& f, int quad_order);

/// Doerfler marking: minimal patch set (descending eta^2, ties by ascending
/// id) whose sum reaches theta times the total.
std::vector<int> mark(const std::vector<double>& eta_sq, double theta);

/// Split the marked patches, then keep splitting the coarser neighbor of any
/// edge with a level gap of 2 or more until the mesh is balanced.
MultiPatch refine(const MultiPatch& mp, const std::vector<int>& marked);

/// Dyadic refinement of every patch's spaces, no splitting.
MultiPatch uniform_refine(const MultiPatch& mp);

struct LoopConfig {
    int degree = 2;
    int initial_spans = 2;
    double theta = 0.5;
    bool uniform = false;
    int max_dof = 10000;
    int max_levels = 30;
    double solver_tol = 1e-12;
    int quad_bump = 3;
};

struct AdaptiveState {
    int level = 0;
    MultiPatch mp;
    ConstraintMatrix constraints;
    GlobalBasis basis;
    std::vector<double> u;  // global coefficients, boundary values included
    int n_dof_raw = 0;      // columns of B
    int n_dof = 0;          // free (non-Dirichlet) DOFs
    EstimateResult eta;
    std::optional<ErrorPair> errors;
    SolveReport solve;
};

/// The solve-estimate-mark-refine loop; returns one state per level.
std::vector<AdaptiveState> adaptive_loop(
    const ProblemDef& problem, const LoopConfig& config,
    const std::function<void(const AdaptiveState&)>& on_level = {});

/// One solve on a fixed discretization (the loop body without refinement).
AdaptiveState solve_on(const MultiPatch& mp, const ProblemDef& problem,
                       const LoopConfig& config, int level);

}  // namespace iga
