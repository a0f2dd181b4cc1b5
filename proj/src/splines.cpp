#include "iga/splines.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace iga {

KnotVector::KnotVector(int degree, std::vector<Dyadic> knots)
    : degree_(degree), knots_(std::move(knots)) {
    IGA_REQUIRE(degree_ >= 1, "knot vector: degree must be >= 1");
    const int p = degree_;
    const int nk = static_cast<int>(knots_.size());
    IGA_REQUIRE(nk >= 2 * (p + 1), "knot vector: too few knots");
    for (int i = 0; i + 1 < nk; ++i)
        IGA_REQUIRE(!(knots_[i + 1] < knots_[i]), "knot vector: knots not ascending");
    for (int i = 0; i <= p; ++i) {
        IGA_REQUIRE(knots_[i] == Dyadic(0), "knot vector: not p-open at 0");
        IGA_REQUIRE(knots_[nk - 1 - i] == Dyadic(1), "knot vector: not p-open at 1");
    }
    // interior multiplicity <= p, i.e. xi_i < xi_{i+p}
    for (int i = 1; i + p < nk - 1; ++i)
        IGA_REQUIRE(knots_[i] < knots_[i + p], "knot vector: interior multiplicity > degree");
    values_.resize(nk);
    for (int i = 0; i < nk; ++i) values_[i] = knots_[i].to_double();
}

std::vector<Dyadic> KnotVector::breakpoints() const {
    std::vector<Dyadic> b;
    for (const Dyadic& k : knots_)
        if (b.empty() || b.back() != k) b.push_back(k);
    return b;
}

SplineSpace1D make_uniform_space(int degree, int spans) {
    IGA_REQUIRE(spans >= 1 && (spans & (spans - 1)) == 0,
                "uniform space: span count must be a power of two");
    int log2 = 0;
    while ((1 << log2) < spans) ++log2;
    std::vector<Dyadic> knots;
    for (int i = 0; i <= degree; ++i) knots.push_back(Dyadic(0));
    for (int i = 1; i < spans; ++i) knots.push_back(Dyadic::make(i, log2));
    for (int i = 0; i <= degree; ++i) knots.push_back(Dyadic(1));
    return SplineSpace1D(KnotVector(degree, std::move(knots)));
}

namespace {

int find_span(const std::vector<double>& knots, int p, double t) {
    const int nk = static_cast<int>(knots.size());
    if (t >= knots[nk - 1]) {
        // last non-empty span (right-closed convention)
        int s = nk - p - 2;
        while (knots[s] == knots[s + 1]) --s;
        return s;
    }
    int lo = p, hi = nk - p - 1;
    int mid = (lo + hi) / 2;
    while (t < knots[mid] || t >= knots[mid + 1]) {
        if (t < knots[mid])
            hi = mid;
        else
            lo = mid;
        mid = (lo + hi) / 2;
    }
    return mid;
}

}  // namespace

BasisTable eval_basis(const SplineSpace1D& space, double t, int max_deriv) {
    const KnotVector& kv = space.knot_vector();
    const int p = kv.degree();
    IGA_REQUIRE(t >= 0.0 && t <= 1.0, "eval_basis: parameter outside [0,1]");
    IGA_REQUIRE(max_deriv >= 0 && max_deriv <= p, "eval_basis: derivative order above degree");
    const std::vector<double>& U = kv.knot_values();
    const int span = find_span(U, p, t);

    // Basis functions and derivatives, The NURBS Book, Alg. A2.3.
    std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
    std::vector<double> left(p + 1, 0.0), right(p + 1, 0.0);
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = t - U[span + 1 - j];
        right[j] = U[span + j] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double tmp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * tmp;
            saved = left[j - r] * tmp;
        }
        ndu[j][j] = saved;
    }

    BasisTable out;
    out.first_index = span - p;
    out.table.assign(max_deriv + 1, std::vector<double>(p + 1, 0.0));
    for (int j = 0; j <= p; ++j) out.table[0][j] = ndu[j][p];

    std::vector<std::vector<double>> a(2, std::vector<double>(p + 1, 0.0));
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a[0][0] = 1.0;
        for (int k = 1; k <= max_deriv; ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                d = a[s2][0] * ndu[rk][pk];
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? (k - 1) : (p - r);
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += a[s2][j] * ndu[rk + j][pk];
            }
            if (r <= pk) {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            out.table[k][r] = d;
            std::swap(s1, s2);
        }
    }
    double factor = p;
    for (int k = 1; k <= max_deriv; ++k) {
        for (int j = 0; j <= p; ++j) out.table[k][j] *= factor;
        factor *= (p - k);
    }
    return out;
}

KnotVector dyadic_refine(const KnotVector& kv) {
    std::vector<Dyadic> out;
    const auto& knots = kv.knots();
    for (std::size_t i = 0; i < knots.size(); ++i) {
        out.push_back(knots[i]);
        if (i + 1 < knots.size() && knots[i] < knots[i + 1])
            out.push_back(Dyadic::midpoint(knots[i], knots[i + 1]));
    }
    return KnotVector(kv.degree(), std::move(out));
}

bool knots_subset(const KnotVector& coarse, const KnotVector& fine) {
    if (coarse.degree() != fine.degree()) return false;
    std::size_t j = 0;
    const auto& ck = coarse.knots();
    const auto& fk = fine.knots();
    for (const Dyadic& k : ck) {
        while (j < fk.size() && fk[j] < k) ++j;
        if (j >= fk.size() || fk[j] != k) return false;
        ++j;
    }
    return true;
}

std::vector<std::vector<double>> knot_insertion_rows(int degree,
                                                     const std::vector<Dyadic>& coarse,
                                                     const std::vector<Dyadic>& target) {
    const int p = degree;
    const int nc = static_cast<int>(coarse.size()) - p - 1;

    // Knots of target missing from coarse, with multiplicity, in order.
    std::vector<Dyadic> to_insert;
    {
        std::size_t i = 0;
        for (const Dyadic& k : target) {
            if (i < coarse.size() && coarse[i] == k)
                ++i;
            else
                to_insert.push_back(k);
        }
        IGA_REQUIRE(i == coarse.size(), "knot insertion: knot lists not nested");
    }

    // Boehm knot insertion applied to every coarse coefficient row at once.
    std::vector<Dyadic> knots = coarse;
    std::vector<std::vector<double>> rows(nc);
    for (int i = 0; i < nc; ++i) {
        rows[i].assign(nc, 0.0);
        rows[i][i] = 1.0;
    }
    for (const Dyadic& u : to_insert) {
        // span: last index with knots[span] <= u < knots[span+1]
        int span = static_cast<int>(std::upper_bound(knots.begin(), knots.end(), u,
                                                     [](Dyadic a, Dyadic b) { return a < b; }) -
                                    knots.begin()) -
                   1;
        const int n = static_cast<int>(knots.size()) - p - 1;
        for (auto& row : rows) {
            row.resize(n + 1, 0.0);
            for (int j = n; j >= 1; --j) {
                double alpha;
                if (j <= span - p)
                    alpha = 1.0;
                else if (j >= span + 1)
                    alpha = 0.0;
                else
                    alpha = (u - knots[j]).to_double() / (knots[j + p] - knots[j]).to_double();
                row[j] = alpha * row[j] + (1.0 - alpha) * row[j - 1];
            }
        }
        knots.insert(knots.begin() + span + 1, u);
    }
    for (auto& row : rows) row.resize(target.size() - p - 1, 0.0);
    return rows;
}

SparseMatrix embedding_matrix(const SplineSpace1D& coarse, const SplineSpace1D& fine) {
    const KnotVector& ckv = coarse.knot_vector();
    const KnotVector& fkv = fine.knot_vector();
    IGA_REQUIRE(ckv.degree() == fkv.degree(), "embedding: degree mismatch");
    IGA_REQUIRE(knots_subset(ckv, fkv), "embedding: knot vectors not nested");

    const auto rows = knot_insertion_rows(ckv.degree(), ckv.knots(), fkv.knots());
    std::vector<Triplet> t;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (int j = 0; j < static_cast<int>(rows[i].size()); ++j)
            if (rows[i][j] != 0.0) t.push_back({i, j, rows[i][j]});
    return SparseMatrix::from_triplets(static_cast<int>(rows.size()), fine.dimension(),
                                       std::move(t));
}

SplineSpace1D restrict_to_subinterval(const SplineSpace1D& space, Dyadic a, Dyadic b) {
    const KnotVector& kv = space.knot_vector();
    IGA_REQUIRE(Dyadic(0) <= a && a < b && b <= Dyadic(1),
                "restrict: interval must satisfy 0 <= a < b <= 1");
    const auto is_knot = [&](Dyadic t) {
        for (const Dyadic& k : kv.knots())
            if (k == t) return true;
        return false;
    };
    IGA_REQUIRE(a == Dyadic(0) || is_knot(a), "restrict: a is not a knot");
    IGA_REQUIRE(b == Dyadic(1) || is_knot(b), "restrict: b is not a knot");

    const int p = kv.degree();
    const Dyadic len = b - a;
    std::vector<Dyadic> out;
    for (int i = 0; i <= p; ++i) out.push_back(Dyadic(0));
    for (const Dyadic& k : kv.knots()) {
        if (a < k && k < b) {
            auto u = Dyadic::try_divide(k - a, len);
            IGA_REQUIRE(u.has_value(), "restrict: non-dyadic rescaled knot");
            out.push_back(*u);
        }
    }
    for (int i = 0; i <= p; ++i) out.push_back(Dyadic(1));
    return SplineSpace1D(KnotVector(p, std::move(out)));
}

GridSizes grid_sizes(const KnotVector& kv) {
    GridSizes g;
    g.h_min = 1.0;
    for (int i = 0; i + 1 < kv.num_knots(); ++i) {
        const double d = kv.knot_values()[i + 1] - kv.knot_values()[i];
        if (d > 0.0) {
            g.h_max = std::max(g.h_max, d);
            g.h_min = std::min(g.h_min, d);
        }
    }
    return g;
}

std::vector<double> greville_points(const SplineSpace1D& space) {
    const KnotVector& kv = space.knot_vector();
    const int p = kv.degree();
    std::vector<double> g(space.dimension());
    for (int i = 0; i < space.dimension(); ++i) {
        double s = 0.0;
        for (int j = 1; j <= p; ++j) s += kv.knot_values()[i + j];
        g[i] = s / p;
    }
    return g;
}

}  // namespace iga
