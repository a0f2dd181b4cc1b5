#include "iga/coupling.hpp"

#include <algorithm>

namespace iga {

namespace {

struct EdgeSide {
    Side side;
    DyadicInterval span;
    bool mirror;  // patch side coordinate runs against the canonical direction
};

EdgeSide edge_side(const EdgeRecord& e, int patch_id) {
    if (patch_id == e.patch_a) return {e.side_a, e.span_a, false};
    IGA_REQUIRE(patch_id == e.patch_b, "edge not incident to patch");
    return {e.side_b, e.span_b, e.reversed};
}

SplineSpace1D mirror_space(const SplineSpace1D& space) {
    const KnotVector& kv = space.knot_vector();
    std::vector<Dyadic> knots;
    knots.reserve(kv.num_knots());
    for (int i = kv.num_knots() - 1; i >= 0; --i) knots.push_back(Dyadic(1) - kv.knot(i));
    return SplineSpace1D(KnotVector(kv.degree(), std::move(knots)));
}

bool is_full(const DyadicInterval& iv) { return iv.lo == Dyadic(0) && iv.up == Dyadic(1); }

bool multiset_subset(const std::vector<Dyadic>& a, const std::vector<Dyadic>& b) {
    std::size_t j = 0;
    for (const Dyadic& k : a) {
        while (j < b.size() && b[j] < k) ++j;
        if (j >= b.size() || b[j] != k) return false;
        ++j;
    }
    return true;
}

}  // namespace

int side_line_dof(const Patch& patch, Side s, int m) {
    const int nx = patch.sx.dimension();
    const int ny = patch.sy.dimension();
    switch (s) {
        case Side::west: return m * nx;
        case Side::east: return (nx - 1) + m * nx;
        case Side::south: return m;
        case Side::north: return m + (ny - 1) * nx;
    }
    throw Error("bad side");
}

std::vector<int> side_trace_line_indices(const Patch& patch, Side s,
                                         const DyadicInterval& span) {
    const KnotVector& kv = side_space(patch, s).knot_vector();
    const int p = kv.degree();
    std::vector<int> out;
    for (int m = 0; m < kv.num_basis(); ++m)
        if (kv.knot(m) < span.up && span.lo < kv.knot(m + p + 1)) out.push_back(m);
    return out;
}

TraceSpace trace_space(const MultiPatch& mp, int patch_id, const EdgeRecord& edge) {
    const Patch& patch = mp.patches.at(patch_id);
    const EdgeSide es = edge_side(edge, patch_id);

    TraceSpace ts;
    ts.patch_id = patch_id;
    ts.side = es.side;
    const SplineSpace1D& line = side_space(patch, es.side);
    SplineSpace1D restricted =
        is_full(es.span) ? line : restrict_to_subinterval(line, es.span.lo, es.span.up);
    ts.space = es.mirror ? mirror_space(restricted) : restricted;

    for (int m : side_trace_line_indices(patch, es.side, es.span))
        ts.dof_map.push_back(side_line_dof(patch, es.side, m));
    if (es.mirror) std::reverse(ts.dof_map.begin(), ts.dof_map.end());
    IGA_REQUIRE(static_cast<int>(ts.dof_map.size()) == ts.space.dimension(),
                "trace space: dof map inconsistent with restricted dimension");
    return ts;
}

int finer_side(const MultiPatch& mp, const EdgeRecord& e) {
    const Patch& pa = mp.patches[e.patch_a];
    const Patch& pb = mp.patches[e.patch_b];
    const auto ka = side_trace_interior_knots(pa, e.side_a, e.span_a, false);
    const auto kb = side_trace_interior_knots(pb, e.side_b, e.span_b, e.reversed);
    const bool a_in_b = multiset_subset(ka, kb);
    const bool b_in_a = multiset_subset(kb, ka);
    IGA_REQUIRE(a_in_b || b_in_a,
                "constraints: trace spaces on edge between patches " +
                    std::to_string(e.patch_a) + " and " + std::to_string(e.patch_b) +
                    " are not nested (Assumption 4 violated)");
    if (a_in_b && b_in_a) {
        if (e.full_side_a() && e.full_side_b()) return std::min(e.patch_a, e.patch_b);
        return e.full_side_a() ? e.patch_a : e.patch_b;
    }
    return a_in_b ? e.patch_b : e.patch_a;
}

ConstraintMatrix build_constraints(const MultiPatch& mp) {
    const std::vector<int> offsets = mp.dof_offsets();
    const int n_pw = offsets.back();

    ConstraintMatrix cm;
    std::vector<Triplet> triplets;
    int row = 0;

    for (std::size_t ei = 0; ei < mp.topology.edges.size(); ++ei) {
        const EdgeRecord& e = mp.topology.edges[ei];
        const int fine_id = finer_side(mp, e);
        const int coarse_id = e.other(fine_id);
        const Patch& fine = mp.patches[fine_id];
        const Patch& coarse = mp.patches[coarse_id];
        const EdgeSide fs = edge_side(e, fine_id);
        const EdgeSide cs = edge_side(e, coarse_id);
        IGA_REQUIRE(is_full(fs.span),
                    "constraints: finer side of edge between patches " +
                        std::to_string(e.patch_a) + " and " + std::to_string(e.patch_b) +
                        " does not cover a full patch side");

        const SplineSpace1D& cline = side_space(coarse, cs.side);
        const KnotVector& ckv = cline.knot_vector();
        const int p = ckv.degree();
        IGA_REQUIRE(p == side_space(fine, fs.side).degree(),
                    "constraints: mixed spline degrees are not supported");
        const Dyadic a = cs.span.lo, b = cs.span.up;
        const Dyadic len = b - a;

        // Fine-side interior knots mapped into the coarse side coordinate.
        // The relative orientation of the two side coordinates is given by
        // the edge's reversed flag, regardless of which side is finer.
        const KnotVector& fkv = side_space(fine, fs.side).knot_vector();
        std::vector<Dyadic> fine_interior;
        for (const Dyadic& u : fkv.knots()) {
            if (Dyadic(0) < u && u < Dyadic(1)) {
                const Dyadic pos = e.reversed ? Dyadic(1) - u : u;
                fine_interior.push_back(a + pos * len);
            }
        }
        std::sort(fine_interior.begin(), fine_interior.end());

        // Augmented knot list: coarse knots outside [a,b], discontinuity
        // multiplicity p+1 at a and b, fine knots inside. The basis functions
        // supported inside [a,b] are exactly the fine trace basis in
        // coarse-ascending order.
        std::vector<Dyadic> aug;
        for (const Dyadic& k : ckv.knots())
            if (k < a) aug.push_back(k);
        for (int i = 0; i <= p; ++i) aug.push_back(a);
        for (const Dyadic& k : fine_interior) aug.push_back(k);
        for (int i = 0; i <= p; ++i) aug.push_back(b);
        for (const Dyadic& k : ckv.knots())
            if (b < k) aug.push_back(k);

        const auto E = knot_insertion_rows(p, ckv.knots(), aug);

        int mid_start = -1, mid_count = 0;
        const int n_aug = static_cast<int>(aug.size()) - p - 1;
        for (int j = 0; j < n_aug; ++j) {
            if (!(aug[j] < a) && !(b < aug[j + p + 1])) {
                if (mid_start < 0) mid_start = j;
                ++mid_count;
            }
        }
        const int n_fine = side_space(fine, fs.side).dimension();
        IGA_REQUIRE(mid_count == n_fine, "constraints: trace block size mismatch");

        for (int m = 0; m < n_fine; ++m) {
            const int fine_trace_index = e.reversed ? n_fine - 1 - m : m;
            const int fine_dof =
                offsets[fine_id] + side_line_dof(fine, fs.side, fine_trace_index);
            triplets.push_back({row, fine_dof, 1.0});
            for (int i = 0; i < static_cast<int>(E.size()); ++i) {
                const double v = E[i][mid_start + m];
                if (std::abs(v) <= 1e-13) continue;
                const int coarse_dof = offsets[coarse_id] + side_line_dof(coarse, cs.side, i);
                triplets.push_back({row, coarse_dof, -v});
            }
            cm.row_meta.push_back({static_cast<int>(ei), fine_id, fine_dof});
            ++row;
        }
    }

    cm.C = SparseMatrix::from_triplets(row, n_pw, std::move(triplets), 1e-13);
    return cm;
}

}  // namespace iga
