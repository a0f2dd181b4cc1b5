#pragma once

#include "iga/sparse.hpp"

namespace iga {

struct DenseNullspaceCheck {
    int rank = 0;            // numerical rank of C
    double projector_diff = 0.0;  // max-abs of P_nullspace(C) - P_span(B)
};

/// Dense SVD comparison for small instances: computes rank(C) and the
/// difference between the orthogonal projector onto nullspace(C) and the
/// projector onto span(B). Independent of the elimination algorithm.
DenseNullspaceCheck dense_nullspace_compare(const SparseMatrix& C, const SparseMatrix& B);

int dense_rank(const SparseMatrix& A);

}  // namespace iga
