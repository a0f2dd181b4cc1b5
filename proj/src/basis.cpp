#include "iga/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "iga/dense_oracle.hpp"

namespace iga {

namespace {

constexpr double kRelZero = 1e-12;  // entry is zero iff |v| <= kRelZero * row max

using SparseRow = std::map<int, double>;
using SparseCol = std::map<int, double>;

struct Elimination {
    std::vector<SparseRow> w;            // rows of W = C * B
    std::vector<std::set<int>> w_cols;   // column -> rows with structural nonzero
    std::vector<SparseCol> b;            // columns of B (row -> value)
    std::set<std::pair<int, int>> candidates;  // (row nnz, row) with non-empty F
    int nonzero_rows = 0;

    double row_scale(int i) const {
        double s = 0.0;
        for (const auto& [c, v] : w[i]) s = std::max(s, std::abs(v));
        return s;
    }

    /// Drop below-threshold entries of row i and refresh its candidate entry.
    void purge_row(int i, int old_nnz) {
        if (old_nnz > 0) candidates.erase({old_nnz, i});
        const double thresh = kRelZero * row_scale(i);
        for (auto it = w[i].begin(); it != w[i].end();) {
            if (std::abs(it->second) <= thresh) {
                w_cols[it->first].erase(i);
                it = w[i].erase(it);
            } else {
                ++it;
            }
        }
        if (!w[i].empty() && !sign_candidates(i).empty())
            candidates.insert({static_cast<int>(w[i].size()), i});
    }

    /// F_m: columns carrying the sole positive or sole negative entry.
    std::vector<int> sign_candidates(int i) const {
        int pos = 0, neg = 0, pos_col = -1, neg_col = -1;
        for (const auto& [c, v] : w[i]) {
            if (v > 0) {
                ++pos;
                pos_col = c;
            } else {
                ++neg;
                neg_col = c;
            }
        }
        std::vector<int> f;
        if (pos == 1) f.push_back(pos_col);
        if (neg == 1) f.push_back(neg_col);
        std::sort(f.begin(), f.end());
        return f;
    }
};

}  // namespace

GlobalBasis nullspace_basis(const ConstraintMatrix& cm, const std::vector<int>& dof_offsets) {
    const SparseMatrix& C = cm.C;
    const int n_rows = C.rows();
    const int n_pw = C.cols();
    IGA_REQUIRE(!dof_offsets.empty() && dof_offsets.back() == n_pw,
                "nullspace basis: offsets inconsistent with constraint columns");

    Elimination e;
    e.w.resize(n_rows);
    e.w_cols.resize(n_pw);
    e.b.resize(n_pw);
    for (int j = 0; j < n_pw; ++j) e.b[j][j] = 1.0;
    for (int i = 0; i < n_rows; ++i) {
        const auto cols = C.row_cols(i);
        const auto vals = C.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            e.w[i][cols[k]] = vals[k];
            e.w_cols[cols[k]].insert(i);
        }
        e.purge_row(i, 0);
        if (!e.w[i].empty()) ++e.nonzero_rows;
    }

    std::vector<int> eliminated;
    while (e.nonzero_rows > 0) {
        if (e.candidates.empty()) {
            std::ostringstream msg;
            msg << "nullspace basis: no eliminable row although " << e.nonzero_rows
                << " constraint rows remain after " << eliminated.size() << " steps";
            throw Error(msg.str());
        }
        const int m = e.candidates.begin()->second;
        const std::vector<int> f = e.sign_candidates(m);

        int n_col = f.front();
        for (int c : f) {
            const auto nnz_b = [&](int col) { return static_cast<int>(e.b[col].size()); };
            if (nnz_b(c) < nnz_b(n_col))
                n_col = c;
            else if (nnz_b(c) == nnz_b(n_col) && c != n_col) {
                // tie: prefer the positive entry's column, then the smaller index
                const bool c_pos = e.w[m].at(c) > 0;
                const bool n_pos = e.w[m].at(n_col) > 0;
                if (c_pos != n_pos) {
                    if (c_pos) n_col = c;
                } else if (c < n_col) {
                    n_col = c;
                }
            }
        }

        const double pivot = e.w[m].at(n_col);
        const SparseRow pivot_row = e.w[m];
        const std::vector<int> touched(e.w_cols[n_col].begin(), e.w_cols[n_col].end());

        // W <- W * R and B <- B * R, applied column-wise:
        // col j -= (w_mj / w_mn) * col n, then col n is dropped.
        for (const auto& [j, wmj] : pivot_row) {
            if (j == n_col) continue;
            const double factor = wmj / pivot;
            for (const auto& [i, biv] : e.b[n_col]) {
                auto [it, inserted] = e.b[j].try_emplace(i, 0.0);
                it->second -= factor * biv;
            }
        }
        for (int i : touched) {
            const int old_nnz = static_cast<int>(e.w[i].size());
            const double win = e.w[i].at(n_col);
            for (const auto& [j, wmj] : pivot_row) {
                if (j == n_col) continue;
                const double factor = wmj / pivot;
                auto [it, inserted] = e.w[i].try_emplace(j, 0.0);
                it->second -= factor * win;
                if (inserted) e.w_cols[j].insert(i);
            }
            e.w[i].erase(n_col);
            e.purge_row(i, old_nnz);
            if (e.w[i].empty()) --e.nonzero_rows;
        }
        e.w_cols[n_col].clear();
        e.b[n_col].clear();
        eliminated.push_back(n_col);
    }

    std::sort(eliminated.begin(), eliminated.end());

    GlobalBasis basis;
    basis.eliminated_dofs = eliminated;
    basis.dof_offsets = dof_offsets;
    std::vector<Triplet> t;
    int col = 0;
    std::size_t cursor = 0;
    for (int j = 0; j < n_pw; ++j) {
        if (cursor < eliminated.size() && eliminated[cursor] == j) {
            ++cursor;
            continue;
        }
        for (const auto& [i, v] : e.b[j]) {
            // tiny negatives are elimination round-off; the lemma guarantees
            // exact non-negativity
            if (v > -1e-12 && v < 0.0) continue;
            t.push_back({i, col, v});
        }
        ++col;
    }
    basis.B = SparseMatrix::from_triplets(n_pw, col, std::move(t));
    return basis;
}

SparseMatrix rank1_update(const SparseMatrix& A, std::span<const double> pivot_row,
                          int pivot_col) {
    IGA_REQUIRE(static_cast<int>(pivot_row.size()) == A.cols(),
                "rank1 update: pivot row length mismatch");
    const double pivot = pivot_row[pivot_col];
    IGA_REQUIRE(pivot != 0.0, "rank1 update: zero pivot");
    std::vector<Triplet> t;
    for (int i = 0; i < A.rows(); ++i) {
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        double a_in = 0.0;
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (cols[k] == pivot_col) a_in = vals[k];
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (cols[k] != pivot_col) t.push_back({i, cols[k], vals[k]});
        if (a_in != 0.0) {
            for (int j = 0; j < A.cols(); ++j) {
                if (j == pivot_col || pivot_row[j] == 0.0) continue;
                t.push_back({i, j, -pivot_row[j] / pivot * a_in});
            }
        }
    }
    return SparseMatrix::from_triplets(A.rows(), A.cols(), std::move(t));
}

bool BasisVerification::passes(double c_scale) const {
    if (max_cb > 1e-10 * (1.0 + c_scale)) return false;
    if (min_entry < -1e-12) return false;
    if (max_row_sum_err > 1e-10) return false;
    if (oracle_checked) {
        if (n_global != n_pw - oracle_rank) return false;
        if (projector_diff > 1e-9) return false;
    }
    return true;
}

std::string BasisVerification::summary() const {
    std::ostringstream os;
    os << "n_pw=" << n_pw << " n_global=" << n_global << " max|CB|=" << max_cb
       << " minB=" << min_entry << " rowSumErr=" << max_row_sum_err
       << " maxRowNnz=" << max_row_nnz;
    if (oracle_checked)
        os << " oracleRank=" << oracle_rank << " projDiff=" << projector_diff;
    return os.str();
}

BasisVerification verify_basis(const SparseMatrix& C, const GlobalBasis& basis,
                               int dense_oracle_limit) {
    BasisVerification v;
    v.n_pw = basis.n_pw();
    v.n_global = basis.n_global();
    v.max_cb = C.multiply(basis.B).max_abs();

    v.min_entry = basis.B.nnz() > 0 ? 1e300 : 0.0;
    for (int i = 0; i < basis.B.rows(); ++i) {
        for (double x : basis.B.row_values(i)) v.min_entry = std::min(v.min_entry, x);
        v.max_row_sum_err = std::max(v.max_row_sum_err, std::abs(basis.B.row_sum(i) - 1.0));
        v.max_row_nnz = std::max(v.max_row_nnz,
                                 static_cast<int>(basis.B.row_cols(i).size()));
    }

    if (v.n_pw <= dense_oracle_limit) {
        const DenseNullspaceCheck oracle = dense_nullspace_compare(C, basis.B);
        v.oracle_checked = true;
        v.oracle_rank = oracle.rank;
        v.oracle_nullity = v.n_pw - oracle.rank;
        v.projector_diff = oracle.projector_diff;
    }
    return v;
}

}  // namespace iga
