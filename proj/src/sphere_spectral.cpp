#include "levylab/sphere_spectral.hpp"

#include <Eigen/Dense>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "levylab/quadrature.hpp"

namespace levylab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

// K(t) = sum_{m>=0} (t + 2 pi m)^{-1-2a}: M explicit terms, then the
// Euler-Maclaurin tail (integral + B2/B4 corrections), error << 1e-13.
double hurwitz_kernel(double t, double twoal) {
    constexpr int M = 64;
    double s = 0.0;
    for (int m = 0; m < M; ++m) s += std::pow(t + kTwoPi * m, -1.0 - twoal);
    const double z = t + kTwoPi * M;
    const double g = std::pow(z, -1.0 - twoal);
    s += std::pow(z, -twoal) / (twoal * kTwoPi) + 0.5 * g;
    const double gp = -(1.0 + twoal) * kTwoPi * std::pow(z, -2.0 - twoal);
    const double gppp = -(1.0 + twoal) * (2.0 + twoal) * (3.0 + twoal) *
                        kTwoPi * kTwoPi * kTwoPi * std::pow(z, -4.0 - twoal);
    return s - gp / 12.0 + gppp / 720.0;
}

// P_l(cos t) - 1 as a hypergeometric series in z = sin^2(t/2); exact-to-eps
// for l*t <~ 1, with no 1 - 1 cancellation.
double legendre_minus_one_series(int l, double t) {
    const double st = std::sin(0.5 * t);
    const double z = st * st;
    double coef = 1.0, zpow = 1.0, sum = 0.0;
    for (int j = 1; j < 80; ++j) {
        coef *= static_cast<double>(-(l - j + 1)) * static_cast<double>(l + j) /
                (static_cast<double>(j) * static_cast<double>(j));
        zpow *= z;
        const double contrib = coef * zpow;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

struct PanelSet {
    std::vector<double> nodes, weights;
};

// region (0, t0]: geometric panels toward 0 (series zone)
PanelSet inner_panels(double t0, const QuadRule& g) {
    PanelSet p;
    const auto edges = graded_edges(t0, 2.0, 1e-8);
    for (std::size_t i = 1; i + 1 < edges.size(); ++i) {
        const QuadRule q = mapped(g, edges[i], edges[i + 1]);
        p.nodes.insert(p.nodes.end(), q.x.begin(), q.x.end());
        p.weights.insert(p.weights.end(), q.w.begin(), q.w.end());
    }
    return p;
}

// region [t0, 2pi]: widths grow geometrically from t0, capped at the
// oscillation scale pi/(L+1)
PanelSet outer_panels(double t0, int L, int refine, const QuadRule& g) {
    PanelSet p;
    const double wmax = kPi / ((L + 1.0) * refine);
    double lo = t0, w = t0;
    while (lo < kTwoPi) {
        w = std::min(w * 1.7, wmax);
        const double hi = std::min(lo + w, kTwoPi);
        const QuadRule q = mapped(g, lo, hi);
        p.nodes.insert(p.nodes.end(), q.x.begin(), q.x.end());
        p.weights.insert(p.weights.end(), q.w.begin(), q.w.end());
        lo = hi;
    }
    return p;
}

std::vector<double> multipliers_once(int L, double alpha, int refine) {
    const double twoal = 2.0 * alpha;
    const QuadRule g8 = gauss_legendre(8 * refine);
    const QuadRule g16 = gauss_legendre(16);
    const double t0 = 0.5 / (L + 1.0);

    std::vector<double> lam(static_cast<std::size_t>(L) + 1, 0.0);

    const PanelSet outer = outer_panels(t0, L, refine, g16);
    {
        // vector Legendre recurrence over all degrees at each node
        std::vector<double> P0(outer.nodes.size(), 1.0), P1(outer.nodes.size());
        std::vector<double> xs(outer.nodes.size()), wk(outer.nodes.size());
        for (std::size_t q = 0; q < outer.nodes.size(); ++q) {
            xs[q] = std::cos(outer.nodes[q]);
            wk[q] = outer.weights[q] * hurwitz_kernel(outer.nodes[q], twoal);
            P1[q] = xs[q];
            lam[1] += wk[q] * (P1[q] - 1.0);
        }
        for (int l = 1; l < L; ++l) {
            for (std::size_t q = 0; q < outer.nodes.size(); ++q) {
                const double P2 = ((2.0 * l + 1.0) * xs[q] * P1[q] - l * P0[q]) / (l + 1.0);
                P0[q] = P1[q];
                P1[q] = P2;
                lam[static_cast<std::size_t>(l) + 1] += wk[q] * (P2 - 1.0);
            }
        }
    }

    const PanelSet inner = inner_panels(t0, g8);
    {
        std::vector<double> wk(inner.nodes.size());
        for (std::size_t q = 0; q < inner.nodes.size(); ++q)
            wk[q] = inner.weights[q] * hurwitz_kernel(inner.nodes[q], twoal);
        for (int l = 1; l <= L; ++l)
            for (std::size_t q = 0; q < inner.nodes.size(); ++q)
                lam[static_cast<std::size_t>(l)] +=
                    wk[q] * legendre_minus_one_series(l, inner.nodes[q]);
    }

    // analytic correction below the smallest inner edge: P_l(cos t)-1 ~ -l(l+1) t^2/4
    const double tmin = graded_edges(t0, 2.0, 1e-8)[1];
    for (int l = 1; l <= L; ++l)
        lam[static_cast<std::size_t>(l)] +=
            -l * (l + 1.0) / 4.0 * std::pow(tmin, 2.0 - twoal) / (2.0 - twoal);

    const double front =
        signed_levy_constant(Dimension(2), alpha) * kTwoPi;
    for (auto& v : lam) v *= front;
    lam[0] = 0.0;
    return lam;
}

} // namespace

MultiplierTable sphere_multiplier_table(int L, StabilityIndex alpha) {
    if (L < 0) throw std::invalid_argument("sphere_multiplier_table: L must be >= 0");
    MultiplierTable t;
    t.alpha = alpha.value();
    t.n = 2;
    if (L == 0) {
        t.lambdas = {0.0};
        t.quad_error = {0.0};
        return t;
    }
    const auto base = multipliers_once(L, alpha.value(), 1);
    auto fine = multipliers_once(L, alpha.value(), 2);
    t.quad_error.resize(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i)
        t.quad_error[i] = std::abs(fine[i] - base[i]) + 1e-14;
    t.lambdas = std::move(fine);
    return t;
}

double sphere_multiplier(int l, StabilityIndex alpha) {
    if (l < 0) throw std::invalid_argument("sphere_multiplier: l must be >= 0");
    if (l == 0) return 0.0;
    return sphere_multiplier_table(l, alpha).lambdas[static_cast<std::size_t>(l)];
}

double parity_gap(const MultiplierTable& table, int l) {
    const int L = static_cast<int>(table.lambdas.size()) - 1;
    if (l < 1 || l > L - 1)
        throw std::invalid_argument("parity_gap: need 1 <= l <= L-1");
    auto s = [&](int j) {
        return table.lambdas[static_cast<std::size_t>(j)] +
               std::pow(j * (j + 1.0), table.alpha);
    };
    return s(l) - 0.5 * (s(l - 1) + s(l + 1));
}

double torus_control_parity_gap(int l, double alpha) {
    if (l < 1) throw std::invalid_argument("torus_control_parity_gap: l must be >= 1");
    auto s = [&](int j) {
        const double sym = -std::pow(kTwoPi * j, 2.0 * alpha);
        return sym + std::pow(j * (j + 1.0), alpha) * std::pow(kTwoPi, 2.0 * alpha);
    };
    return s(l) - 0.5 * (s(l - 1) + s(l + 1));
}

std::vector<double> legendre_all(int L, double x) {
    std::vector<double> P(static_cast<std::size_t>(L) + 1);
    P[0] = 1.0;
    if (L >= 1) P[1] = x;
    for (int l = 1; l < L; ++l)
        P[static_cast<std::size_t>(l) + 1] =
            ((2.0 * l + 1.0) * x * P[static_cast<std::size_t>(l)] -
             l * P[static_cast<std::size_t>(l) - 1]) /
            (l + 1.0);
    return P;
}

ZonalSolution solve_capture_zonal(StabilityIndex alpha, double eps, int L,
                                  const MultiplierTable& table, int n_nodes) {
    if (static_cast<int>(table.lambdas.size()) < L + 1)
        throw std::invalid_argument("solve_capture_zonal: multiplier table too short");
    if (L < static_cast<int>(4.0 / eps))
        throw std::invalid_argument("solve_capture_zonal: L must be >= 4/eps to resolve the cap");
    if (n_nodes <= 0) n_nodes = 2 * L;
    if (n_nodes < 2 * L)
        throw std::invalid_argument("solve_capture_zonal: need at least 2L collocation nodes");

    const QuadRule gl = gauss_legendre(n_nodes);
    const Eigen::Index rows = n_nodes, cols = L + 1;
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd rhs(rows);
    std::vector<bool> cap(static_cast<std::size_t>(n_nodes));
    std::vector<std::vector<double>> Prows(static_cast<std::size_t>(n_nodes));

    for (Eigen::Index i = 0; i < rows; ++i) {
        const double x = gl.x[static_cast<std::size_t>(i)];
        const double theta = std::acos(std::clamp(x, -1.0, 1.0));
        const bool in_cap = theta <= eps;
        cap[static_cast<std::size_t>(i)] = in_cap;
        auto P = legendre_all(L, x);
        const double rw = std::sqrt(gl.w[static_cast<std::size_t>(i)]);
        for (Eigen::Index l = 0; l < cols; ++l) {
            const double base = P[static_cast<std::size_t>(l)];
            A(i, l) = rw * (in_cap ? base
                                   : base * table.lambdas[static_cast<std::size_t>(l)]);
        }
        rhs[i] = rw * (in_cap ? 0.0 : -1.0);
        Prows[static_cast<std::size_t>(i)] = std::move(P);
    }

    // column equilibration, then QR least squares
    Eigen::VectorXd colnorm(cols);
    for (Eigen::Index l = 0; l < cols; ++l) {
        const double nc = A.col(l).norm();
        colnorm[l] = nc > 0 ? nc : 1.0;
        A.col(l) /= colnorm[l];
    }
    Eigen::VectorXd a = A.colPivHouseholderQr().solve(rhs);
    if (!a.allFinite()) throw std::runtime_error("solve_capture_zonal: rank-deficient system");
    a = a.cwiseQuotient(colnorm);

    ZonalSolution sol;
    sol.eps = eps;
    sol.alpha = alpha.value();
    sol.coeffs.assign(a.data(), a.data() + cols);

    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& P = Prows[static_cast<std::size_t>(i)];
        double u = 0.0, au = 0.0;
        for (Eigen::Index l = 0; l < cols; ++l) {
            u += sol.coeffs[static_cast<std::size_t>(l)] * P[static_cast<std::size_t>(l)];
            au += sol.coeffs[static_cast<std::size_t>(l)] * P[static_cast<std::size_t>(l)] *
                  table.lambdas[static_cast<std::size_t>(l)];
        }
        if (cap[static_cast<std::size_t>(i)])
            sol.cap_residual = std::max(sol.cap_residual, std::abs(u));
        else
            sol.pde_residual = std::max(sol.pde_residual, std::abs(au + 1.0));
    }

    double amax = 0.0;
    for (double c : sol.coeffs) amax = std::max(amax, std::abs(c));
    sol.under_resolved = std::abs(sol.coeffs.back()) >= 1e-4 * amax;
    return sol;
}

double antipodal_deviation(const ZonalSolution& sol) {
    double s = 0.0;
    double sgn = -1.0;
    for (std::size_t l = 1; l < sol.coeffs.size(); ++l) {
        s += sgn * sol.coeffs[l];
        sgn = -sgn;
    }
    return s;
}

} // namespace levylab
