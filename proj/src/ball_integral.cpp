#include "levylab/ball_integral.hpp"

#include <cmath>
#include <stdexcept>

#include "levylab/quadrature.hpp"

namespace levylab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

BallFunction BallFunction::radial(int n, RadialFn f) {
    BallFunction b;
    b.n_ = n;
    b.radial_ = std::move(f);
    return b;
}

BallFunction BallFunction::radial_samples(int n, std::vector<double> nodes,
                                          std::vector<double> values) {
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw std::invalid_argument("BallFunction: need matching node/value arrays");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("BallFunction: nodes must increase");
    auto interp = [nodes = std::move(nodes), values = std::move(values)](double s) {
        const double r = std::sqrt(std::max(0.0, 1.0 - s));
        if (r <= nodes.front()) return values.front();
        if (r >= nodes.back()) return values.back();
        std::size_t lo = 0, hi = nodes.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (nodes[mid] <= r ? lo : hi) = mid;
        }
        const double t = (r - nodes[lo]) / (nodes[lo + 1] - nodes[lo]);
        return values[lo] + t * (values[lo + 1] - values[lo]);
    };
    return radial(n, interp);
}

BallFunction BallFunction::general(int n, PointFn f) {
    BallFunction b;
    b.n_ = n;
    b.point_ = std::move(f);
    return b;
}

double BallFunction::eval_radial_s(double s) const {
    if (!radial_) throw std::logic_error("BallFunction: not radial");
    return radial_(s);
}

double BallFunction::eval_point(const std::vector<double>& y) const {
    if (point_) return point_(y);
    double r2 = 0.0;
    for (double c : y) r2 += c * c;
    return radial_(1.0 - r2);
}

BallQuadratureParams BallQuadratureParams::make(BallResolution r) {
    if (r == BallResolution::High) return {96, 16, 1e-60};
    return {48, 12, 1e-48};
}

namespace {

// Integrate u along the ray x + r w, r in (0, R), times r^{2a-1}, where R is
// the exit distance. b = x.w. The two endpoint singularities get geometric
// grading; 1-|y|^2 is evaluated as (R-r)(r-Rm) with Rm the negative root.
double ray_integral(const BallFunction& u, double r0, double b, double twoal,
                    const QuadRule& gq, double floor_, const std::vector<double>& x,
                    const std::vector<double>& w) {
    const double disc = std::sqrt(std::max(1.0 - r0 * r0 + b * b, 0.0));
    const double R = -b + disc;
    const double Rm = -b - disc;
    if (R <= 0.0) return 0.0;
    double acc = 0.0;
    const bool radial = u.is_radial();
    std::vector<double> y;
    if (!radial) y.resize(x.size());

    auto eval = [&](double r, double s) {
        if (radial) return u.eval_radial_s(s);
        for (std::size_t d = 0; d < x.size(); ++d) y[d] = x[d] + r * w[d];
        return u.eval_point(y);
    };

    const auto edges = graded_edges(R / 2.0, 2.0, floor_);
    // inner half: r in (0, R/2], graded toward 0
    for (std::size_t i = 1; i + 1 < edges.size(); ++i) {
        const QuadRule q = mapped(gq, edges[i], edges[i + 1]);
        for (std::size_t j = 0; j < q.x.size(); ++j) {
            const double r = q.x[j];
            acc += q.w[j] * eval(r, (R - r) * (r - Rm)) * std::pow(r, twoal - 1.0);
        }
    }
    // outer half: offset q = R - r in (0, R/2], graded toward the boundary
    for (std::size_t i = 1; i + 1 < edges.size(); ++i) {
        const QuadRule q = mapped(gq, edges[i], edges[i + 1]);
        for (std::size_t j = 0; j < q.x.size(); ++j) {
            const double off = q.x[j];
            const double r = R - off;
            acc += q.w[j] * eval(r, off * (r - Rm)) * std::pow(r, twoal - 1.0);
        }
    }
    return acc;
}

} // namespace

double apply_L_alpha(const BallFunction& u, const std::vector<double>& x, double alpha,
                     const BallQuadratureParams& params) {
    const int n = u.dim();
    if (n != 2 && n != 3) throw std::invalid_argument("apply_L_alpha: n must be 2 or 3");
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("apply_L_alpha: point has wrong dimension");
    double r0sq = 0.0;
    for (double c : x) r0sq += c * c;
    const double r0 = std::sqrt(r0sq);
    if (!(r0 < 1.0)) throw std::invalid_argument("apply_L_alpha: x must be interior");

    const double twoal = 2.0 * alpha;
    const QuadRule gq = gauss_legendre(params.panel_nodes);
    const QuadRule ga = gauss_legendre(params.angular_nodes);

    // Unit direction frame: first axis along x (any frame works for radial u;
    // for general u the angular average over the remaining angles is exact
    // only in 2D, so general functions are restricted to n = 2).
    if (!u.is_radial() && n != 2)
        throw std::invalid_argument("apply_L_alpha: non-radial functions supported in 2D only");

    double total = 0.0;
    if (n == 2) {
        // directions w(phi) at angle phi from x; integrand even in phi
        const double ux = r0 > 0 ? x[0] / r0 : 1.0;
        const double uy = r0 > 0 ? x[1] / r0 : 0.0;
        for (std::size_t i = 0; i < ga.x.size(); ++i) {
            const double phi = 0.5 * kPi * (ga.x[i] + 1.0); // (0, pi)
            const double wphi = 0.5 * kPi * ga.w[i];
            const double c = std::cos(phi), s = std::sin(phi);
            for (double sgn : {1.0, -1.0}) {
                const std::vector<double> w{ux * c - sgn * uy * s, uy * c + sgn * ux * s};
                total += wphi *
                         ray_integral(u, r0, r0 * c, twoal, gq, params.grading_floor, x, w);
            }
        }
    } else {
        // zonal reduction: 2 pi int_{-1}^{1} dc, c = cos(angle to x)
        for (std::size_t i = 0; i < ga.x.size(); ++i) {
            const double c = ga.x[i];
            const double wgt = 2.0 * kPi * ga.w[i];
            total += wgt * ray_integral(u, r0, r0 * c, twoal, gq, params.grading_floor, x, {});
        }
    }
    return -total;
}

double apply_L_alpha(const BallFunction& u, const std::vector<double>& x, double alpha,
                     BallResolution res) {
    return apply_L_alpha(u, x, alpha, BallQuadratureParams::make(res));
}

double verify_inverse_formula(Dimension n, StabilityIndex alpha,
                              const std::vector<double>& test_radii, BallResolution res) {
    const double a = alpha.value();
    const double ca = ball_inverse_constant(n, alpha);
    const BallFunction u =
        BallFunction::radial(n.value(), [ca, a](double s) { return -ca * std::pow(s, -a); });
    double worst = 0.0;
    for (double r : test_radii) {
        if (!(r >= 0.0) || r > 0.95)
            throw std::invalid_argument("verify_inverse_formula: radii must lie in [0, 0.95]");
        std::vector<double> x(static_cast<std::size_t>(n.value()), 0.0);
        x[0] = r;
        const double val = apply_L_alpha(u, x, a, res);
        worst = std::max(worst, std::abs(val - 1.0));
    }
    return worst;
}

LeadingProfile leading_f_profile(Dimension n, StabilityIndex alpha, double volume, double eps) {
    const double a = alpha.value();
    LeadingProfile out{
        BallFunction::radial(n.value(), [a](double s) { return std::pow(s, -a); }),
        -volume * std::pow(eps, -static_cast<double>(n.value())) / weight_integral(n, alpha)};
    return out;
}

double leading_capture_constant(Dimension n, StabilityIndex alpha, double volume, double eps) {
    return std::pow(eps, 2.0 * alpha.value() - n.value()) * volume *
           signed_levy_constant(n, -alpha.value()) /
           (ball_inverse_constant(n, alpha) * weight_integral(n, alpha));
}

} // namespace levylab
