#pragma once

#include <span>
#include <vector>

#include "iga/coupling.hpp"
#include "iga/sparse.hpp"

namespace iga {

/// Conforming global basis: image of B is the nullspace of C, all entries
/// non-negative, every row sums to 1, columns linearly independent.
struct GlobalBasis {
    SparseMatrix B;  // n_pw x n_global
    std::vector<int> eliminated_dofs;  // ascending patch-wise DOF indices
    std::vector<int> dof_offsets;      // per-patch offsets, size K+1

    int n_pw() const { return B.rows(); }
    int n_global() const { return B.cols(); }
};

/// Constraint elimination: transform C into a full-rank non-negative
/// partition-of-unity basis matrix by repeated rank-1 column updates.
///
/// Each step picks a row m of W = C*B whose nonzero entries have a unique
/// sign on one side (the sole positive or sole negative entry), eliminates
/// that column from B and W, and stops when W vanishes. Row choice: fewest
/// nonzeros, ties by smallest row index; column choice: fewest nonzeros in
/// the current B column, ties by the positive entry, then smallest index.
GlobalBasis nullspace_basis(const ConstraintMatrix& cm, const std::vector<int>& dof_offsets);

/// One elimination update A <- A*R with R = I - e_n w^T / w_n
/// (w the pivot row, n the pivot column). Column n of the result is zero.
SparseMatrix rank1_update(const SparseMatrix& A, std::span<const double> pivot_row,
                          int pivot_col);

struct BasisVerification {
    int n_pw = 0;
    int n_global = 0;
    double max_cb = 0.0;           // max |C*B| entry
    double min_entry = 0.0;        // smallest entry of B
    double max_row_sum_err = 0.0;  // max |row sum - 1|
    int max_row_nnz = 0;
    // dense-oracle comparison, run only on small instances
    bool oracle_checked = false;
    int oracle_rank = -1;
    int oracle_nullity = -1;
    double projector_diff = 0.0;  // max-abs difference of span projectors

    bool passes(double c_scale) const;
    std::string summary() const;
};

/// Check the basis properties (C*B = 0, non-negativity, partition of unity,
/// and on instances with n_pw <= dense_oracle_limit a dense SVD rank and
/// span comparison).
BasisVerification verify_basis(const SparseMatrix& C, const GlobalBasis& basis,
                               int dense_oracle_limit = 80);

}  // namespace iga
