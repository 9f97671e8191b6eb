#include "levylab/constants.hpp"

#include <cmath>

namespace levylab {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

double abs_gamma_neg(double a) {
    // Gamma(-a) Gamma(1+a) = -pi / sin(pi a)  =>  |Gamma(-a)| = pi / (sin(pi a) Gamma(1+a))
    return kPi / (std::sin(kPi * a) * std::tgamma(1.0 + a));
}

double sphere_surface(int n) {
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double levy_constant(Dimension n, StabilityIndex alpha) {
    return signed_levy_constant(n, alpha.value());
}

double signed_levy_constant(Dimension n, double a) {
    if (a == 0.0 || a <= -1.0 || a >= 1.0)
        throw std::invalid_argument("signed_levy_constant: alpha must lie in (-1,0) u (0,1)");
    const double nd = n.value();
    const double absGm = a > 0.0 ? abs_gamma_neg(a) : std::tgamma(-a);
    return std::pow(4.0, a) * std::tgamma(0.5 * nd + a) / (std::pow(kPi, 0.5 * nd) * absGm);
}

double capture_constant(Dimension n, StabilityIndex alpha) {
    const double a = alpha.value();
    const double nd = n.value();
    return std::pow(4.0, -a) * std::tgamma(0.5 * nd - a) * std::tgamma(0.5 * nd - a + 1.0) /
           (std::pow(kPi, 0.5 * nd) * std::tgamma(0.5 * nd));
}

double ball_inverse_constant(Dimension n, StabilityIndex alpha) {
    const double a = alpha.value();
    if (n.value() == 2) return std::sin((1.0 - a) * kPi) / (kPi * kPi);
    const double nd = n.value();
    // radial integral int_0^1 r^{n-3} (1-r^2)^{-a} dr = B((n-2)/2, 1-a)/2
    const double radial = 0.5 * std::tgamma(0.5 * (nd - 2.0)) * std::tgamma(1.0 - a) /
                          std::tgamma(0.5 * nd - a);
    return (nd - 2.0) * std::sin((1.0 - a) * kPi) * std::tgamma(0.5 * nd - a) /
           (std::pow(kPi, 0.5 * nd + 1.0) * std::tgamma(1.0 - a)) * radial;
}

double weight_integral(Dimension n, StabilityIndex alpha) {
    const double a = alpha.value();
    const double nd = n.value();
    return std::pow(kPi, 0.5 * nd) * std::tgamma(1.0 - a) / std::tgamma(0.5 * nd + 1.0 - a);
}

double error_term(Dimension n, StabilityIndex alpha, double eps, ErrorTermKind kind) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::invalid_argument("error_term: eps must lie in (0,1)");
    const double a = alpha.value();
    const double nd = n.value();
    if (a == 0.5) return eps * std::abs(std::log(eps));
    if (kind == ErrorTermKind::Torus) return std::max(eps, std::pow(eps, nd - 2.0 * a));
    if (a < 0.5) return std::pow(eps, 2.0 * a);
    return std::max(eps, std::pow(eps, nd - 2.0 * a));
}

double getoor_ball_mean_exit(Dimension n, StabilityIndex alpha, double abs_x) {
    if (!(abs_x >= 0.0) || !(abs_x < 1.0))
        throw std::invalid_argument("getoor_ball_mean_exit: |x| must lie in [0,1)");
    const double a = alpha.value();
    const double nd = n.value();
    return std::tgamma(0.5 * nd) /
           (std::pow(4.0, a) * std::tgamma(1.0 + a) * std::tgamma(0.5 * nd + a)) *
           std::pow(1.0 - abs_x * abs_x, a);
}

double identity_residual(Dimension n, StabilityIndex alpha) {
    const double lhs = capture_constant(n, alpha) * ball_inverse_constant(n, alpha) *
                       weight_integral(n, alpha);
    return std::abs(lhs - signed_levy_constant(n, -alpha.value()));
}

} // namespace levylab
