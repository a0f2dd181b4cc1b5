#include "iga/solver.hpp"

#include <cmath>
#include <sstream>

#include "iga/dyadic.hpp"

namespace iga {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<double> solve_spd(const SparseMatrix& A, const std::vector<double>& b,
                              SolveReport& report, double tol, int max_iter) {
    const int n = A.rows();
    IGA_REQUIRE(A.cols() == n && static_cast<int>(b.size()) == n,
                "solve: dimension mismatch");
    if (max_iter < 0) max_iter = 50 * std::max(n, 1);

    report = SolveReport{};
    std::vector<double> x(n, 0.0);
    const double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0) {
        report.converged = true;
        return x;
    }

    std::vector<double> inv_diag(n, 1.0);
    for (int i = 0; i < n; ++i) {
        const double d = A.coeff(i, i);
        IGA_REQUIRE(d > 0.0, "solve: non-positive diagonal entry " + std::to_string(i));
        inv_diag[i] = 1.0 / d;
    }

    std::vector<double> r = b;
    std::vector<double> z(n), p(n), Ap(n);
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);

    for (int it = 1; it <= max_iter; ++it) {
        A.matvec(p, Ap);
        const double alpha = rz / dot(p, Ap);
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        const double res = std::sqrt(dot(r, r)) / b_norm;
        report.iterations = it;
        report.relative_residual = res;
        if (res <= tol) {
            report.converged = true;
            return x;
        }
        for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    std::ostringstream msg;
    msg << "solve: conjugate gradients did not converge in " << max_iter
        << " iterations (residual " << report.relative_residual << ")";
    throw Error(msg.str());
}

}  // namespace iga
