#include "iga/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "iga/coupling.hpp"

namespace iga {

namespace {

std::vector<std::pair<double, double>> element_spans(const KnotVector& kv) {
    std::vector<std::pair<double, double>> spans;
    const auto& v = kv.knot_values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1]) spans.emplace_back(v[i], v[i + 1]);
    return spans;
}

/// Patch parameters of a point on a side at side coordinate `coord`.
Vec2 side_params(Side s, double coord) { return side_point(s, coord); }

}  // namespace

EstimateResult estimate(const MultiPatch& mp, const GlobalBasis& basis,
                        const std::vector<double>& u_global, const Coefficient& nu,
                        const Coefficient& f, int quad_order) {
    IGA_REQUIRE(nu.piecewise_constant(),
                "estimator: analytic diffusion coefficients are not supported");
    const std::vector<double> pw = patchwise_coefficients(basis, u_global);
    const std::vector<int>& offsets = basis.dof_offsets;
    const int K = mp.num_patches();

    EstimateResult res;
    res.interior_part.assign(K, 0.0);
    res.jump_part.assign(K, 0.0);
    res.eta_sq.assign(K, 0.0);

    std::vector<double> h(K);
    for (int k = 0; k < K; ++k) h[k] = patch_physical_grid_size(mp, k);

    const QuadRule rule = gauss_rule(quad_order);

    // interior residual: h_k^2 * || f + nu * laplace(u_h) ||^2
    for (int k = 0; k < K; ++k) {
        const Patch& patch = mp.patches[k];
        const std::span<const double> local{pw.data() + offsets[k],
                                            static_cast<std::size_t>(patch.num_dofs())};
        const double nu_k = nu(patch.root, Vec2{});
        double acc = 0.0;
        for (const auto& [x0, x1] : element_spans(patch.sx.knot_vector())) {
            for (const auto& [y0, y1] : element_spans(patch.sy.knot_vector())) {
                for (int qx = 0; qx < rule.size(); ++qx) {
                    const double s = x0 + rule.points[qx] * (x1 - x0);
                    for (int qy = 0; qy < rule.size(); ++qy) {
                        const double t = y0 + rule.points[qy] * (y1 - y0);
                        const FieldJet jet = eval_field(mp, k, local, s, t, 2);
                        const MapJet map = eval_map(mp, k, s, t, 1);
                        const double w = rule.weights[qx] * (x1 - x0) * rule.weights[qy] *
                                         (y1 - y0) * std::abs(map.det);
                        const double r = f(patch.root, map.value) + nu_k * jet.laplacian();
                        acc += w * r * r;
                    }
                }
            }
        }
        res.interior_part[k] = h[k] * h[k] * acc;
    }

    // normal-flux jumps, integrated once per edge on the merged knot partition
    for (const EdgeRecord& e : mp.topology.edges) {
        const Patch& pa = mp.patches[e.patch_a];
        const Patch& pb = mp.patches[e.patch_b];
        const std::span<const double> la{pw.data() + offsets[e.patch_a],
                                         static_cast<std::size_t>(pa.num_dofs())};
        const std::span<const double> lb{pw.data() + offsets[e.patch_b],
                                         static_cast<std::size_t>(pb.num_dofs())};
        const double nu_a = nu(pa.root, Vec2{});
        const double nu_b = nu(pb.root, Vec2{});
        const double len_a = e.span_a.length().to_double();
        const double len_b = e.span_b.length().to_double();

        // breakpoints of both sides in the canonical edge coordinate
        std::vector<double> cuts{0.0, 1.0};
        for (const Dyadic& u : side_trace_interior_knots(pa, e.side_a, e.span_a, false))
            cuts.push_back(u.to_double());
        for (const Dyadic& u : side_trace_interior_knots(pb, e.side_b, e.span_b, e.reversed))
            cuts.push_back(u.to_double());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        double acc = 0.0;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            for (int q = 0; q < rule.size(); ++q) {
                const double alpha = cuts[c] + rule.points[q] * (cuts[c + 1] - cuts[c]);
                const double wq = rule.weights[q] * (cuts[c + 1] - cuts[c]);

                const double ca = e.span_a.lo.to_double() + alpha * len_a;
                const double beta = e.reversed ? 1.0 - alpha : alpha;
                const double cb = e.span_b.lo.to_double() + beta * len_b;
                const Vec2 sa = side_params(e.side_a, ca);
                const Vec2 sb = side_params(e.side_b, cb);

                const FieldJet ja = eval_field(mp, e.patch_a, la, sa.x, sa.y, 1);
                const FieldJet jb = eval_field(mp, e.patch_b, lb, sb.x, sb.y, 1);

                // tangent of the edge in physical space (via side a)
                const MapJet map = eval_map(mp, e.patch_a, sa.x, sa.y, 1);
                const int dir = (e.side_a == Side::west || e.side_a == Side::east) ? 1 : 0;
                const Vec2 tangent{map.jac[0][dir] * len_a, map.jac[1][dir] * len_a};
                const double tlen = norm(tangent);
                const Vec2 normal{tangent.y / tlen, -tangent.x / tlen};

                const Vec2 flux_jump = nu_a * ja.grad - nu_b * jb.grad;
                const double jump = dot(normal, flux_jump);
                acc += wq * tlen * jump * jump;
            }
        }
        res.jump_part[e.patch_a] += 0.5 * h[e.patch_a] * acc;
        res.jump_part[e.patch_b] += 0.5 * h[e.patch_b] * acc;
    }

    double total_sq = 0.0;
    for (int k = 0; k < K; ++k) {
        res.eta_sq[k] = res.interior_part[k] + res.jump_part[k];
        total_sq += res.eta_sq[k];
    }
    res.total_eta = std::sqrt(total_sq);
    return res;
}

std::vector<int> mark(const std::vector<double>& eta_sq, double theta) {
    IGA_REQUIRE(theta > 0.0 && theta <= 1.0, "marking: theta must be in (0,1]");
    std::vector<int> order(eta_sq.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return eta_sq[a] != eta_sq[b] ? eta_sq[a] > eta_sq[b] : a < b;
    });
    double total = 0.0;
    for (int k : order) total += eta_sq[k];
    if (total <= 0.0) return {};
    const double target = theta * total;
    std::vector<int> marked;
    double sum = 0.0;
    for (int k : order) {
        if (sum >= target) break;
        if (eta_sq[k] <= 0.0) break;
        marked.push_back(k);
        sum += eta_sq[k];
    }
    std::sort(marked.begin(), marked.end());
    return marked;
}

MultiPatch refine(const MultiPatch& mp, const std::vector<int>& marked) {
    MultiPatch cur = mp;
    std::vector<int> to_split = marked;
    const int max_rounds = 10 * std::max(1, mp.num_patches());
    int rounds = 0;
    while (!to_split.empty()) {
        IGA_REQUIRE(++rounds <= max_rounds, "refine: closure did not terminate");
        cur = split_patches(cur, to_split);
        to_split.clear();
        std::set<int> gap;
        for (const EdgeRecord& e : cur.topology.edges) {
            const int la = cur.patches[e.patch_a].level;
            const int lb = cur.patches[e.patch_b].level;
            if (la - lb >= 2) gap.insert(e.patch_b);
            if (lb - la >= 2) gap.insert(e.patch_a);
        }
        to_split.assign(gap.begin(), gap.end());
    }
    const auto violations = validate_assumptions(cur);
    IGA_REQUIRE(violations.empty(), "refine: assumptions violated after refinement: " +
                                        violations.front().message);
    return cur;
}

MultiPatch uniform_refine(const MultiPatch& mp) {
    MultiPatch out = mp;
    for (Patch& p : out.patches) {
        p.sx = SplineSpace1D(dyadic_refine(p.sx.knot_vector()));
        p.sy = SplineSpace1D(dyadic_refine(p.sy.knot_vector()));
    }
    out.topology = rebuild_topology(out);
    return out;
}

AdaptiveState solve_on(const MultiPatch& mp, const ProblemDef& problem,
                       const LoopConfig& config, int level) {
    AdaptiveState st;
    st.level = level;
    st.mp = mp;
    st.constraints = build_constraints(st.mp);
    st.basis = nullspace_basis(st.constraints, st.mp.dof_offsets());

    LinearSystem sys = assemble_global(st.mp, st.basis, problem.nu, problem.f,
                                       config.degree + 1);
    apply_dirichlet(sys, st.mp, st.basis, problem.dirichlet);
    const std::vector<double> x_red =
        solve_spd(sys.A_reduced, sys.b_reduced, st.solve, config.solver_tol);
    st.u = expand_solution(sys, x_red);
    st.n_dof_raw = st.basis.n_global();
    st.n_dof = static_cast<int>(sys.free_dofs.size());

    st.eta = estimate(st.mp, st.basis, st.u, problem.nu, problem.f, config.degree + 3);
    if (problem.has_exact())
        st.errors = compute_errors(st.mp, st.basis, st.u, problem.exact, problem.exact_grad,
                                   config.degree + 3, problem.singular_point, config.quad_bump);
    return st;
}

std::vector<AdaptiveState> adaptive_loop(
    const ProblemDef& problem, const LoopConfig& config,
    const std::function<void(const AdaptiveState&)>& on_level) {
    std::vector<AdaptiveState> history;
    MultiPatch mp = make_initial(problem.geometry, config.degree, config.initial_spans);

    for (int level = 0;; ++level) {
        AdaptiveState st = solve_on(mp, problem, config, level);
        history.push_back(st);
        if (on_level) on_level(history.back());
        if (st.n_dof >= config.max_dof || level >= config.max_levels) break;

        if (config.uniform) {
            mp = uniform_refine(history.back().mp);
        } else {
            const std::vector<int> marked = mark(history.back().eta.eta_sq, config.theta);
            if (marked.empty()) break;
            mp = refine(history.back().mp, marked);
        }
    }
    return history;
}

}  // namespace iga
