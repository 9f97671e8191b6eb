#include "levylab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace levylab {

QuadRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadRule q;
    q.x.resize(n);
    q.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        q.x[i] = -z;
        q.x[n - 1 - i] = z;
        q.w[i] = q.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return q;
}

QuadRule mapped(const QuadRule& base, double a, double b) {
    QuadRule q;
    const std::size_t n = base.x.size();
    q.x.resize(n);
    q.w.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
        q.x[i] = mid + half * base.x[i];
        q.w[i] = half * base.w[i];
    }
    return q;
}

std::vector<double> graded_edges(double total, double ratio, double floor) {
    std::vector<double> rev;
    rev.push_back(total);
    double t = total;
    while (t > total * floor && rev.size() < 4000) {
        t /= ratio;
        rev.push_back(t);
    }
    rev.push_back(0.0);
    return {rev.rbegin(), rev.rend()};
}

} // namespace levylab
