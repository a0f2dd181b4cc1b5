#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace iga {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/// Compressed-sparse-row matrix with deterministic entry ordering.
///
/// Duplicate coordinates are summed on construction and entries with
/// |value| < 1e-14 are dropped, so stored patterns stay minimal.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0), row_ptr_(1, 0) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

    static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets,
                                      double drop_tol = 1e-14);
    static SparseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const { return static_cast<int>(col_.size()); }

    std::span<const int> row_cols(int i) const {
        return {col_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }
    std::span<const double> row_values(int i) const {
        return {val_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
    }

    double coeff(int i, int j) const;
    double max_abs() const;
    double row_sum(int i) const;

    SparseMatrix transpose() const;
    SparseMatrix multiply(const SparseMatrix& other) const;

    /// y = A x
    void matvec(std::span<const double> x, std::span<double> y) const;
    /// y = A^T x
    void matvec_transpose(std::span<const double> x, std::span<double> y) const;

    /// Submatrix with the given rows (in the given order), columns unchanged.
    SparseMatrix gather_rows(std::span<const int> rows) const;
    /// Submatrix with the given columns (in the given order), rows unchanged.
    SparseMatrix gather_cols(std::span<const int> cols) const;

    std::vector<Triplet> to_triplets() const;

    /// Coordinate text format: header "rows cols nnz", then one
    /// "row col value" triplet per line.
    void write_coordinate(std::ostream& os) const;
    static SparseMatrix read_coordinate(std::istream& is);

private:
    int rows_, cols_;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<double> val_;
};

}  // namespace iga
