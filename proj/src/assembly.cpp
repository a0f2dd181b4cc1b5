#include "iga/assembly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "iga/coupling.hpp"

namespace iga {

Coefficient Coefficient::constant(double v) {
    Coefficient c;
    c.constant_ = v;
    return c;
}

Coefficient Coefficient::per_root(std::vector<double> values) {
    Coefficient c;
    c.per_root_ = std::move(values);
    return c;
}

Coefficient Coefficient::analytic(std::function<double(Vec2)> f) {
    Coefficient c;
    c.fn_ = std::move(f);
    return c;
}

double Coefficient::operator()(int root, Vec2 x) const {
    if (fn_) return fn_(x);
    if (!per_root_.empty()) return per_root_.at(root);
    return constant_;
}

namespace {

/// Non-empty spans of a knot vector as (t0, t1) pairs in double precision.
std::vector<std::pair<double, double>> element_spans(const KnotVector& kv) {
    std::vector<std::pair<double, double>> spans;
    const auto& v = kv.knot_values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1]) spans.emplace_back(v[i], v[i + 1]);
    return spans;
}

struct Inverse2x2 {
    double inv[2][2];
    double det;
};

Inverse2x2 invert(const MapJet& jet, int patch_id) {
    IGA_REQUIRE(std::abs(jet.det) > 1e-14,
                "assembly: degenerate geometry on patch " + std::to_string(patch_id));
    Inverse2x2 r;
    r.det = jet.det;
    r.inv[0][0] = jet.jac[1][1] / jet.det;
    r.inv[0][1] = -jet.jac[0][1] / jet.det;
    r.inv[1][0] = -jet.jac[1][0] / jet.det;
    r.inv[1][1] = jet.jac[0][0] / jet.det;
    return r;
}

}  // namespace

FieldJet eval_field(const MultiPatch& mp, int patch_id, std::span<const double> local_coeffs,
                    double s, double t, int derivs) {
    const Patch& patch = mp.patches.at(patch_id);
    const int nx = patch.sx.dimension();
    IGA_REQUIRE(static_cast<int>(local_coeffs.size()) == patch.num_dofs(),
                "eval_field: coefficient slice size mismatch");
    const int dx = std::min(derivs, patch.sx.degree());
    const int dy = std::min(derivs, patch.sy.degree());
    const BasisTable bx = eval_basis(patch.sx, s, dx);
    const BasisTable by = eval_basis(patch.sy, t, dy);
    const int px = patch.sx.degree(), py = patch.sy.degree();

    const auto accumulate = [&](int a, int b) -> double {
        if (a > dx || b > dy) return 0.0;
        double sum = 0.0;
        for (int j = 0; j <= py; ++j) {
            const double wy = by.table[b][j];
            if (wy == 0.0) continue;
            const int base = (by.first_index + j) * nx + bx.first_index;
            for (int i = 0; i <= px; ++i) sum += bx.table[a][i] * wy * local_coeffs[base + i];
        }
        return sum;
    };

    FieldJet out;
    out.value = accumulate(0, 0);
    if (derivs < 1) return out;

    const MapJet jet = eval_map(mp, patch_id, s, t, derivs);
    const Inverse2x2 ji = invert(jet, patch_id);
    const double us = accumulate(1, 0);
    const double ut = accumulate(0, 1);
    // grad u = J^{-T} grad_param u
    out.grad.x = ji.inv[0][0] * us + ji.inv[1][0] * ut;
    out.grad.y = ji.inv[0][1] * us + ji.inv[1][1] * ut;
    if (derivs < 2) return out;

    // Parameter Hessian of u minus the map curvature term, then both-sided
    // chain rule: H_phys = J^{-T} (H_param - sum_c grad_c * H(G_c)) J^{-1}.
    double hp[2][2];
    hp[0][0] = accumulate(2, 0);
    hp[0][1] = hp[1][0] = accumulate(1, 1);
    hp[1][1] = accumulate(0, 2);
    const double g[2] = {out.grad.x, out.grad.y};
    for (int c = 0; c < 2; ++c) {
        hp[0][0] -= g[c] * jet.second[c][0];
        hp[0][1] -= g[c] * jet.second[c][1];
        hp[1][0] -= g[c] * jet.second[c][1];
        hp[1][1] -= g[c] * jet.second[c][2];
    }
    double tmp[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) tmp[a][b] = hp[a][0] * ji.inv[0][b] + hp[a][1] * ji.inv[1][b];
    double h[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) h[a][b] = ji.inv[0][a] * tmp[0][b] + ji.inv[1][a] * tmp[1][b];
    out.hess_xx = h[0][0];
    out.hess_xy = 0.5 * (h[0][1] + h[1][0]);
    out.hess_yy = h[1][1];
    return out;
}

std::vector<double> patchwise_coefficients(const GlobalBasis& basis,
                                           const std::vector<double>& u_global) {
    std::vector<double> pw(basis.n_pw(), 0.0);
    basis.B.matvec(u_global, pw);
    return pw;
}

std::pair<SparseMatrix, std::vector<double>> assemble_patch(const MultiPatch& mp, int patch_id,
                                                            const Coefficient& nu,
                                                            const Coefficient& f,
                                                            int quad_order) {
    const Patch& patch = mp.patches.at(patch_id);
    const int px = patch.sx.degree(), py = patch.sy.degree();
    IGA_REQUIRE(quad_order >= std::max(px, py) + 1, "assembly: quadrature order too low");
    const QuadRule rule = gauss_rule(quad_order);
    const int nx = patch.sx.dimension();
    const int n_local = patch.num_dofs();
    const int n_active = (px + 1) * (py + 1);

    std::vector<Triplet> triplets;
    std::vector<double> b_local(n_local, 0.0);
    std::vector<int> active(n_active);
    std::vector<double> val(n_active), gx(n_active), gy(n_active);

    for (const auto& [x0, x1] : element_spans(patch.sx.knot_vector())) {
        for (const auto& [y0, y1] : element_spans(patch.sy.knot_vector())) {
            for (int qx = 0; qx < rule.size(); ++qx) {
                const double s = x0 + rule.points[qx] * (x1 - x0);
                const BasisTable bx = eval_basis(patch.sx, s, 1);
                for (int qy = 0; qy < rule.size(); ++qy) {
                    const double t = y0 + rule.points[qy] * (y1 - y0);
                    const BasisTable by = eval_basis(patch.sy, t, 1);
                    const MapJet jet = eval_map(mp, patch_id, s, t, 1);
                    const Inverse2x2 ji = invert(jet, patch_id);
                    const double w = rule.weights[qx] * (x1 - x0) * rule.weights[qy] *
                                     (y1 - y0) * std::abs(jet.det);
                    const double nu_q = nu(patch.root, jet.value);
                    const double f_q = f(patch.root, jet.value);

                    int a = 0;
                    for (int j = 0; j <= py; ++j) {
                        for (int i = 0; i <= px; ++i, ++a) {
                            active[a] = (by.first_index + j) * nx + (bx.first_index + i);
                            val[a] = bx.table[0][i] * by.table[0][j];
                            const double ds = bx.table[1][i] * by.table[0][j];
                            const double dt = bx.table[0][i] * by.table[1][j];
                            gx[a] = ji.inv[0][0] * ds + ji.inv[1][0] * dt;
                            gy[a] = ji.inv[0][1] * ds + ji.inv[1][1] * dt;
                        }
                    }
                    for (int ia = 0; ia < n_active; ++ia) {
                        b_local[active[ia]] += w * f_q * val[ia];
                        for (int ib = 0; ib < n_active; ++ib) {
                            const double k = w * nu_q * (gx[ia] * gx[ib] + gy[ia] * gy[ib]);
                            if (k != 0.0) triplets.push_back({active[ia], active[ib], k});
                        }
                    }
                }
            }
        }
    }
    return {SparseMatrix::from_triplets(n_local, n_local, std::move(triplets)), b_local};
}

LinearSystem assemble_global(const MultiPatch& mp, const GlobalBasis& basis,
                             const Coefficient& nu, const Coefficient& f, int quad_order) {
    const std::vector<int>& offsets = basis.dof_offsets;
    const int n_global = basis.n_global();

    LinearSystem sys;
    sys.b.assign(n_global, 0.0);
    std::vector<Triplet> a_triplets;

    for (int k = 0; k < mp.num_patches(); ++k) {
        const auto [A_local, b_local] = assemble_patch(mp, k, nu, f, quad_order);
        std::vector<int> rows(mp.patches[k].num_dofs());
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = offsets[k] + static_cast<int>(i);
        const SparseMatrix B_k = basis.B.gather_rows(rows);
        const SparseMatrix BtAB = B_k.transpose().multiply(A_local.multiply(B_k));
        for (const Triplet& t : BtAB.to_triplets()) a_triplets.push_back(t);
        std::vector<double> bt(n_global, 0.0);
        B_k.matvec_transpose(b_local, bt);
        for (int j = 0; j < n_global; ++j) sys.b[j] += bt[j];
    }
    sys.A = SparseMatrix::from_triplets(n_global, n_global, std::move(a_triplets));
    return sys;
}

namespace {

/// Boundary coefficients on one side: constrained L2-projection of g in the
/// side parameter with the two end coefficients interpolating g exactly.
std::vector<double> project_boundary_side(const MultiPatch& mp, int patch_id, Side side,
                                          const std::function<double(Vec2)>& g) {
    const Patch& patch = mp.patches[patch_id];
    const SplineSpace1D& line = side_space(patch, side);
    const int n = line.dimension();
    const int p = line.degree();

    const auto curve_point = [&](double u) {
        const Vec2 st = side_point(side, u);
        return eval_map(mp, patch_id, st.x, st.y, 0).value;
    };

    std::vector<double> c(n, 0.0);
    c[0] = g(curve_point(0.0));
    c[n - 1] = g(curve_point(1.0));
    if (n == 2) return c;

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    const QuadRule rule = gauss_rule(p + 3);
    for (const auto& [t0, t1] : element_spans(line.knot_vector())) {
        for (int q = 0; q < rule.size(); ++q) {
            const double u = t0 + rule.points[q] * (t1 - t0);
            const double w = rule.weights[q] * (t1 - t0);
            const BasisTable bt = eval_basis(line, u, 0);
            const double gv = g(curve_point(u));
            for (int i = 0; i <= p; ++i) {
                const int bi = bt.first_index + i;
                r(bi) += w * bt.table[0][i] * gv;
                for (int j = 0; j <= p; ++j)
                    M(bi, bt.first_index + j) += w * bt.table[0][i] * bt.table[0][j];
            }
        }
    }
    // eliminate the interpolated end coefficients
    const int ni = n - 2;
    Eigen::MatrixXd Mi(ni, ni);
    Eigen::VectorXd ri(ni);
    for (int i = 0; i < ni; ++i) {
        ri(i) = r(i + 1) - M(i + 1, 0) * c[0] - M(i + 1, n - 1) * c[n - 1];
        for (int j = 0; j < ni; ++j) Mi(i, j) = M(i + 1, j + 1);
    }
    const Eigen::VectorXd ci = Mi.ldlt().solve(ri);
    for (int i = 0; i < ni; ++i) c[i + 1] = ci(i);
    return c;
}

}  // namespace

void apply_dirichlet(LinearSystem& sys, const MultiPatch& mp, const GlobalBasis& basis,
                     const std::function<double(Vec2)>& g) {
    const std::vector<int>& offsets = basis.dof_offsets;
    const int n_global = basis.n_global();

    // Patch-wise boundary coefficients from the per-side projections.
    std::map<int, double> pw_values;
    for (const BoundarySideRecord& bs : mp.topology.boundary_sides) {
        IGA_REQUIRE(!bs.label.empty(),
                    "dirichlet: unlabeled boundary side on patch " + std::to_string(bs.patch));
        const std::vector<double> c = project_boundary_side(mp, bs.patch, bs.side, g);
        for (int m = 0; m < static_cast<int>(c.size()); ++m) {
            const int dof = offsets[bs.patch] + side_line_dof(mp.patches[bs.patch], bs.side, m);
            pw_values[dof] = c[m];  // corner overlap writes the same g(corner)
        }
    }

    // Translate to global DOFs; boundary rows of B carry a single unit entry.
    std::map<int, double> bdry;
    for (const auto& [dof, value] : pw_values) {
        const auto cols = basis.B.row_cols(dof);
        const auto vals = basis.B.row_values(dof);
        IGA_REQUIRE(cols.size() == 1 && std::abs(vals[0] - 1.0) <= 1e-9,
                    "dirichlet: boundary DOF " + std::to_string(dof) +
                        " is not identified with a single global function");
        bdry[cols[0]] = value;
    }

    sys.dirichlet.assign(bdry.begin(), bdry.end());
    sys.free_dofs.clear();
    std::vector<double> g_full(n_global, 0.0);
    for (const auto& [j, v] : bdry) g_full[j] = v;
    for (int j = 0; j < n_global; ++j)
        if (!bdry.count(j)) sys.free_dofs.push_back(j);

    std::vector<double> Ag(n_global, 0.0);
    sys.A.matvec(g_full, Ag);
    std::vector<double> b_mod(n_global);
    for (int j = 0; j < n_global; ++j) b_mod[j] = sys.b[j] - Ag[j];

    sys.A_reduced = sys.A.gather_rows(sys.free_dofs).gather_cols(sys.free_dofs);
    sys.b_reduced.resize(sys.free_dofs.size());
    for (std::size_t i = 0; i < sys.free_dofs.size(); ++i)
        sys.b_reduced[i] = b_mod[sys.free_dofs[i]];
}

std::vector<double> expand_solution(const LinearSystem& sys,
                                    const std::vector<double>& x_reduced) {
    IGA_REQUIRE(x_reduced.size() == sys.free_dofs.size(), "expand: size mismatch");
    std::vector<double> x(sys.A.rows(), 0.0);
    for (std::size_t i = 0; i < sys.free_dofs.size(); ++i) x[sys.free_dofs[i]] = x_reduced[i];
    for (const auto& [j, v] : sys.dirichlet) x[j] = v;
    return x;
}

std::vector<int> patches_touching(const MultiPatch& mp, Vec2 point, double tol) {
    std::vector<int> out;
    for (const Patch& p : mp.patches) {
        bool touches = false;
        for (int a = 0; a < 2 && !touches; ++a)
            for (int b = 0; b < 2 && !touches; ++b)
                touches = norm(eval_map(mp, p.id, a, b, 0).value - point) <= tol;
        if (touches) out.push_back(p.id);
    }
    return out;
}

ErrorPair compute_errors(const MultiPatch& mp, const GlobalBasis& basis,
                         const std::vector<double>& u_global,
                         const std::function<double(Vec2)>& u_exact,
                         const std::function<Vec2(Vec2)>& grad_exact, int quad_order,
                         std::optional<Vec2> singular_point, int quad_bump) {
    const std::vector<double> pw = patchwise_coefficients(basis, u_global);
    const std::vector<int>& offsets = basis.dof_offsets;
    std::vector<bool> bump(mp.num_patches(), false);
    if (singular_point)
        for (int id : patches_touching(mp, *singular_point)) bump[id] = true;

    ErrorPair err;
    for (int k = 0; k < mp.num_patches(); ++k) {
        const Patch& patch = mp.patches[k];
        const std::span<const double> local{pw.data() + offsets[k],
                                            static_cast<std::size_t>(patch.num_dofs())};
        const QuadRule rule = gauss_rule(quad_order + (bump[k] ? quad_bump : 0));
        for (const auto& [x0, x1] : element_spans(patch.sx.knot_vector())) {
            for (const auto& [y0, y1] : element_spans(patch.sy.knot_vector())) {
                for (int qx = 0; qx < rule.size(); ++qx) {
                    const double s = x0 + rule.points[qx] * (x1 - x0);
                    for (int qy = 0; qy < rule.size(); ++qy) {
                        const double t = y0 + rule.points[qy] * (y1 - y0);
                        const FieldJet u_h = eval_field(mp, k, local, s, t, 1);
                        const MapJet jet = eval_map(mp, k, s, t, 1);
                        const double w = rule.weights[qx] * (x1 - x0) * rule.weights[qy] *
                                         (y1 - y0) * std::abs(jet.det);
                        const double du = u_h.value - u_exact(jet.value);
                        const Vec2 dg = u_h.grad - grad_exact(jet.value);
                        err.l2 += w * du * du;
                        err.h1_semi += w * dot(dg, dg);
                    }
                }
            }
        }
    }
    err.l2 = std::sqrt(err.l2);
    err.h1_semi = std::sqrt(err.h1_semi);
    return err;
}

}  // namespace iga
