#pragma once

#include <vector>

#include "iga/dyadic.hpp"
#include "iga/sparse.hpp"

namespace iga {

/// p-open knot vector with exact dyadic knots in [0,1].
///
/// Invariants enforced on construction: first/last knot repeated p+1 times,
/// interior multiplicity at most p, at least p+1 basis functions.
class KnotVector {
public:
    KnotVector() : degree_(0) {}
    KnotVector(int degree, std::vector<Dyadic> knots);

    int degree() const { return degree_; }
    int num_knots() const { return static_cast<int>(knots_.size()); }
    int num_basis() const { return num_knots() - degree_ - 1; }
    const std::vector<Dyadic>& knots() const { return knots_; }
    const std::vector<double>& knot_values() const { return values_; }
    Dyadic knot(int i) const { return knots_[i]; }

    /// Distinct knot values (breakpoints).
    std::vector<Dyadic> breakpoints() const;

    bool operator==(const KnotVector& o) const {
        return degree_ == o.degree_ && knots_ == o.knots_;
    }

private:
    int degree_;
    std::vector<Dyadic> knots_;
    std::vector<double> values_;
};

/// Univariate B-spline space spanned by a knot vector.
class SplineSpace1D {
public:
    SplineSpace1D() = default;
    explicit SplineSpace1D(KnotVector kv) : kv_(std::move(kv)) {}

    const KnotVector& knot_vector() const { return kv_; }
    int degree() const { return kv_.degree(); }
    int dimension() const { return kv_.num_basis(); }

    bool operator==(const SplineSpace1D& o) const { return kv_ == o.kv_; }

private:
    KnotVector kv_;
};

/// Values and derivatives of the degree+1 basis functions active at one point.
struct BasisTable {
    int first_index = 0;
    /// table[d][j] = d-th derivative of basis function first_index + j.
    std::vector<std::vector<double>> table;
};

struct GridSizes {
    double h_max = 0.0;
    double h_min = 0.0;
};

/// Uniform p-open knot vector with the given number of spans (power of two).
SplineSpace1D make_uniform_space(int degree, int spans);

/// Cox-de Boor evaluation of all active basis functions and derivatives.
/// Evaluation at t=1 uses the last non-empty span (right-closed convention).
BasisTable eval_basis(const SplineSpace1D& space, double t, int max_deriv);

/// Insert the midpoint of every non-empty span, once.
KnotVector dyadic_refine(const KnotVector& kv);

/// Knot-insertion matrix: row i expresses coarse basis function i in the
/// fine basis. Requires nested knot vectors of equal degree; all entries
/// are non-negative and every row sums to 1.
SparseMatrix embedding_matrix(const SplineSpace1D& coarse, const SplineSpace1D& fine);

/// Low-level knot insertion on raw knot lists: row i holds the coefficients
/// of the i-th coarse basis function in the target basis. The target list
/// may carry discontinuity multiplicity degree+1 at interior breakpoints,
/// which the KnotVector type does not allow.
std::vector<std::vector<double>> knot_insertion_rows(int degree,
                                                     const std::vector<Dyadic>& coarse,
                                                     const std::vector<Dyadic>& target);

/// The space of restrictions to [a,b], rescaled to the unit interval.
/// a and b must be 0/1 or knots of the input space.
SplineSpace1D restrict_to_subinterval(const SplineSpace1D& space, Dyadic a, Dyadic b);

GridSizes grid_sizes(const KnotVector& kv);

/// Multiset inclusion of knots (used for nestedness checks).
bool knots_subset(const KnotVector& coarse, const KnotVector& fine);

/// Greville abscissae (knot averages), in [0,1].
std::vector<double> greville_points(const SplineSpace1D& space);

}  // namespace iga
