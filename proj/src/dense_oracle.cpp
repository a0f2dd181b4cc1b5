#include "iga/dense_oracle.hpp"

#include <Eigen/Dense>

#include "iga/dyadic.hpp"

namespace iga {

namespace {

Eigen::MatrixXd to_dense(const SparseMatrix& A) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i) {
        const auto cols = A.row_cols(i);
        const auto vals = A.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) M(i, cols[k]) = vals[k];
    }
    return M;
}

}  // namespace

int dense_rank(const SparseMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    const Eigen::MatrixXd M = to_dense(A);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    const double thresh = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) rank += sv(i) > thresh ? 1 : 0;
    return rank;
}

DenseNullspaceCheck dense_nullspace_compare(const SparseMatrix& C, const SparseMatrix& B) {
    DenseNullspaceCheck out;
    const int n = C.cols();
    IGA_REQUIRE(B.rows() == n, "dense oracle: dimension mismatch");

    Eigen::MatrixXd P_null;
    if (C.rows() == 0) {
        out.rank = 0;
        P_null = Eigen::MatrixXd::Identity(n, n);
    } else {
        const Eigen::MatrixXd Cd = to_dense(C);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Cd, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double thresh = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i) rank += sv(i) > thresh ? 1 : 0;
        out.rank = rank;
        const Eigen::MatrixXd V0 = svd.matrixV().rightCols(n - rank);
        P_null = V0 * V0.transpose();
    }

    Eigen::MatrixXd P_span = Eigen::MatrixXd::Zero(n, n);
    if (B.cols() > 0) {
        const Eigen::MatrixXd Bd = to_dense(B);
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Bd);
        const Eigen::MatrixXd Q =
            qr.householderQ() * Eigen::MatrixXd::Identity(n, B.cols());
        P_span = Q * Q.transpose();
    }
    out.projector_diff = (P_null - P_span).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace iga
