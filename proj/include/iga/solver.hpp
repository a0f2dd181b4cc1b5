#pragma once

#include <string>
#include <vector>

#include "iga/sparse.hpp"

namespace iga {

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    std::string method = "conjugate-gradient";
    bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems.
/// Stops when ||b - A x|| / ||b|| <= tol; throws on non-convergence.
std::vector<double> solve_spd(const SparseMatrix& A, const std::vector<double>& b,
                              SolveReport& report, double tol = 1e-12, int max_iter = -1);

}  // namespace iga
