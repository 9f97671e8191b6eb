#pragma once

#include <vector>

namespace levylab {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre rule on [-1,1], Newton iteration on P_n.
QuadRule gauss_legendre(int n);

// Rule mapped to [a,b].
QuadRule mapped(const QuadRule& base, double a, double b);

// Geometric panel edges over an interval of length `total`, clustered at 0,
// returned ascending in the offset variable: 0, total/ratio^k, ..., total.
// The first edge above 0 is ~ total*floor.
std::vector<double> graded_edges(double total, double ratio, double floor);

} // namespace levylab
