#pragma once

#include <vector>

#include "iga/geometry.hpp"
#include "iga/sparse.hpp"

namespace iga {

/// Restriction of a patch's tensor-product basis to one edge.
///
/// The 1D space and the dof map are given in the canonical edge orientation
/// (ascending side coordinate of the edge's patch_a); for a reversed patch_b
/// side the dof map is reversed and the knots mirrored.
struct TraceSpace {
    int patch_id = 0;
    Side side = Side::west;
    SplineSpace1D space;
    std::vector<int> dof_map;  // trace basis index -> flat patch DOF index
};

struct ConstraintRowMeta {
    int edge = 0;  // index into topology.edges
    int fine_patch = 0;
    int fine_dof = 0;  // flat patch-wise DOF carrying the +1
};

/// Sparse continuity constraints: one row per fine-side trace DOF and edge,
/// with exactly one positive entry (always 1) and row sum zero.
struct ConstraintMatrix {
    SparseMatrix C;  // n_rows x n_pw
    std::vector<ConstraintRowMeta> row_meta;
};

/// Flat patch DOF of the m-th basis function along a side line.
int side_line_dof(const Patch& patch, Side s, int m);

/// Patch basis functions with nonzero trace on the span of a side.
std::vector<int> side_trace_line_indices(const Patch& patch, Side s, const DyadicInterval& span);

TraceSpace trace_space(const MultiPatch& mp, int patch_id, const EdgeRecord& edge);

/// The patch whose trace space on the edge contains the other's
/// (ties: the full-side patch, then the lower id).
int finer_side(const MultiPatch& mp, const EdgeRecord& edge);

ConstraintMatrix build_constraints(const MultiPatch& mp);

}  // namespace iga
