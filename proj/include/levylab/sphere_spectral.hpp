#pragma once

#include <vector>

#include "levylab/constants.hpp"

// Zonal spectral machinery on S^2. The generator acts diagonally on harmonic
// degrees; its multiplier is computed from the polar form at the pole,
//   lambda_l = C(2,a) 2 pi int_0^inf (P_l(cos t) - 1) t^{-1-2a} dt,
// with the integral folded over geodesic wraps: int_0^{2pi} (P_l(cos t)-1) K(t) dt,
// K(t) = sum_{m>=0} (t + 2 pi m)^{-1-2a}. The m-tail is summed analytically
// (Euler-Maclaurin), which reaches any tolerance uniformly in alpha.

namespace levylab {

struct MultiplierTable {
    double alpha = 0.0;
    int n = 2;
    std::vector<double> lambdas;     // index l = 0..L, lambda_0 = 0
    std::vector<double> quad_error;  // per-entry |refined - base|
};

// Table for l = 0..L on S^2.
MultiplierTable sphere_multiplier_table(int L, StabilityIndex alpha);

// Single entry (computed via a table of size l).
double sphere_multiplier(int l, StabilityIndex alpha);

// Parity diagnostic: with s_l = lambda_l + (l(l+1))^a, returns
// g_l = s_l - (s_{l-1} + s_{l+1})/2, which isolates the degree-alternating
// component contributed by the antipodal part of the generator.
double parity_gap(const MultiplierTable& table, int l);

// Same diagnostic applied to the torus symbol -(2 pi l)^{2a} with the
// sphere-style reference (l(l+1))^a (2 pi)^{2a}: no antipodal term, so
// l |g_l| -> 0.
double torus_control_parity_gap(int l, double alpha);

struct ZonalSolution {
    std::vector<double> coeffs;  // a_l, l = 0..L; u(theta) = sum a_l P_l(cos theta)
    double eps = 0.0;
    double alpha = 0.0;
    double cap_residual = 0.0;   // max |u| on collocation nodes inside the cap
    double pde_residual = 0.0;   // max |A u + 1| on collocation nodes outside
    bool under_resolved = false; // a_L / max |a_l| >= 1e-4

    double mean() const { return coeffs.empty() ? 0.0 : coeffs[0]; }
};

// Capture problem on S^2, zonal about the target pole: collocation in
// x = cos(theta) at n_nodes Gauss-Legendre points (>= 2L), least squares with
// rows weighted by sqrt of the quadrature weight and columns equilibrated.
ZonalSolution solve_capture_zonal(StabilityIndex alpha, double eps, int L,
                                  const MultiplierTable& table, int n_nodes = 0);

// u(pi) - a_0 = sum_{l>=1} (-1)^l a_l.
double antipodal_deviation(const ZonalSolution& sol);

// Legendre P_0..P_L at x by the stable three-term recurrence.
std::vector<double> legendre_all(int L, double x);

} // namespace levylab
