#pragma once

#include <vector>

namespace iga {

/// Gauss-Legendre rule on [0,1], exact for polynomials of degree 2n-1.
struct QuadRule {
    std::vector<double> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }
};

/// Nodes by Newton iteration on the Legendre polynomial; deterministic.
QuadRule gauss_rule(int n);

}  // namespace iga
