#include "iga/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "iga/dyadic.hpp"

namespace iga {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets,
                                         double drop_tol) {
    SparseMatrix m(rows, cols);
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    m.col_.reserve(triplets.size());
    m.val_.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
        const int r = triplets[i].row;
        const int c = triplets[i].col;
        IGA_REQUIRE(r >= 0 && r < rows && c >= 0 && c < cols, "sparse: triplet out of range");
        double v = 0.0;
        while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
            v += triplets[i].value;
            ++i;
        }
        if (std::abs(v) >= drop_tol) {
            m.col_.push_back(c);
            m.val_.push_back(v);
            ++m.row_ptr_[r + 1];
        }
    }
    for (int r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    m.col_.resize(n);
    m.val_.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
        m.col_[i] = i;
        m.row_ptr_[i + 1] = i + 1;
    }
    return m;
}

double SparseMatrix::coeff(int i, int j) const {
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it != cols.end() && *it == j) return val_[row_ptr_[i] + (it - cols.begin())];
    return 0.0;
}

double SparseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : val_) m = std::max(m, std::abs(v));
    return m;
}

double SparseMatrix::row_sum(int i) const {
    double s = 0.0;
    for (double v : row_values(i)) s += v;
    return s;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Triplet> t;
    t.reserve(col_.size());
    for (int i = 0; i < rows_; ++i) {
        const auto cols = row_cols(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) t.push_back({cols[k], i, vals[k]});
    }
    return from_triplets(cols_, rows_, std::move(t), 0.0);
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
    IGA_REQUIRE(cols_ == other.rows_, "sparse: multiply dimension mismatch");
    std::vector<Triplet> t;
    std::vector<double> acc(other.cols_, 0.0);
    std::vector<int> touched;
    for (int i = 0; i < rows_; ++i) {
        touched.clear();
        const auto cols = row_cols(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const int mid = cols[k];
            const double v = vals[k];
            const auto ocols = other.row_cols(mid);
            const auto ovals = other.row_values(mid);
            for (std::size_t l = 0; l < ocols.size(); ++l) {
                if (acc[ocols[l]] == 0.0) touched.push_back(ocols[l]);
                acc[ocols[l]] += v * ovals[l];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int c : touched) {
            t.push_back({i, c, acc[c]});
            acc[c] = 0.0;
        }
    }
    return from_triplets(rows_, other.cols_, std::move(t));
}

void SparseMatrix::matvec(std::span<const double> x, std::span<double> y) const {
    IGA_REQUIRE(static_cast<int>(x.size()) == cols_ && static_cast<int>(y.size()) == rows_,
                "sparse: matvec dimension mismatch");
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        const auto cols = row_cols(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * x[cols[k]];
        y[i] = s;
    }
}

void SparseMatrix::matvec_transpose(std::span<const double> x, std::span<double> y) const {
    IGA_REQUIRE(static_cast<int>(x.size()) == rows_ && static_cast<int>(y.size()) == cols_,
                "sparse: matvec dimension mismatch");
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < rows_; ++i) {
        const auto cols = row_cols(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) y[cols[k]] += vals[k] * x[i];
    }
}

SparseMatrix SparseMatrix::gather_rows(std::span<const int> rows) const {
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const int i = rows[r];
        IGA_REQUIRE(i >= 0 && i < rows_, "sparse: gather row out of range");
        const auto cols = row_cols(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k)
            t.push_back({static_cast<int>(r), cols[k], vals[k]});
    }
    return from_triplets(static_cast<int>(rows.size()), cols_, std::move(t), 0.0);
}

SparseMatrix SparseMatrix::gather_cols(std::span<const int> cols) const {
    std::vector<int> pos(cols_, -1);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        IGA_REQUIRE(cols[c] >= 0 && cols[c] < cols_, "sparse: gather col out of range");
        pos[cols[c]] = static_cast<int>(c);
    }
    std::vector<Triplet> t;
    for (int i = 0; i < rows_; ++i) {
        const auto cc = row_cols(i);
        const auto vv = row_values(i);
        for (std::size_t k = 0; k < cc.size(); ++k)
            if (pos[cc[k]] >= 0) t.push_back({i, pos[cc[k]], vv[k]});
    }
    return from_triplets(rows_, static_cast<int>(cols.size()), std::move(t), 0.0);
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
    std::vector<Triplet> t;
    t.reserve(col_.size());
    for (int i = 0; i < rows_; ++i) {
        const auto cols = row_cols(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) t.push_back({i, cols[k], vals[k]});
    }
    return t;
}

void SparseMatrix::write_coordinate(std::ostream& os) const {
    os << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
    char buf[64];
    for (int i = 0; i < rows_; ++i) {
        const auto cols = row_cols(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, cols[k], vals[k]);
            os << buf;
        }
    }
}

SparseMatrix SparseMatrix::read_coordinate(std::istream& is) {
    int rows = 0, cols = 0, nnz = 0;
    IGA_REQUIRE(static_cast<bool>(is >> rows >> cols >> nnz), "sparse: bad coordinate header");
    std::vector<Triplet> t(nnz);
    for (int k = 0; k < nnz; ++k)
        IGA_REQUIRE(static_cast<bool>(is >> t[k].row >> t[k].col >> t[k].value),
                    "sparse: bad coordinate entry");
    return from_triplets(rows, cols, std::move(t), 0.0);
}

}  // namespace iga
