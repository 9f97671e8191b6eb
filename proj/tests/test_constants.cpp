#include <doctest.h>

#include <cmath>

#include "levylab/constants.hpp"
#include "levylab/quadrature.hpp"

using namespace levylab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("domain types reject endpoints") {
    CHECK_THROWS_AS(StabilityIndex(0.0), std::invalid_argument);
    CHECK_THROWS_AS(StabilityIndex(1.0), std::invalid_argument);
    CHECK_THROWS_AS(StabilityIndex(-0.2), std::invalid_argument);
    CHECK_THROWS_AS(Dimension(1), std::invalid_argument);
    CHECK_NOTHROW(StabilityIndex(0.5));
    CHECK_NOTHROW(Dimension(2));
}

TEST_CASE("levy constant closed forms") {
    // 1/(2 pi) and 1/pi^2 by symbolic simplification of Eq. evaluation
    CHECK(levy_constant(Dimension(2), StabilityIndex(0.5)) ==
          doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-13));
    CHECK(levy_constant(Dimension(3), StabilityIndex(0.5)) ==
          doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-13));
    // frozen from a 30-digit evaluation of the same Gamma expression
    CHECK(levy_constant(Dimension(2), StabilityIndex(0.25)) ==
          doctest::Approx(0.0832419838754251).epsilon(1e-12));
}

TEST_CASE("signed levy constant") {
    CHECK(signed_levy_constant(Dimension(2), -0.5) ==
          doctest::Approx(0.5 / kPi).epsilon(1e-13));
    CHECK(signed_levy_constant(Dimension(2), 0.5) ==
          doctest::Approx(levy_constant(Dimension(2), StabilityIndex(0.5))).epsilon(1e-15));
    CHECK(signed_levy_constant(Dimension(3), -0.5) ==
          doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-13));
    CHECK_THROWS_AS(signed_levy_constant(Dimension(2), 0.0), std::invalid_argument);
}

TEST_CASE("capture constant") {
    // n = 3 agrees with the printed two-case formula
    CHECK(capture_constant(Dimension(3), StabilityIndex(0.5)) ==
          doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-13));
    // n = 2: the value consistent with the (c, c_alpha, W, C) identity is
    // 4^{-a}(1-a)Gamma(1-a)^2/pi  (simplifies to 1/4 at a = 1/2)
    CHECK(capture_constant(Dimension(2), StabilityIndex(0.5)) ==
          doctest::Approx(0.25).epsilon(1e-13));
    const double a = 0.9;
    const double expect2 = std::pow(2.0, -1.8) * 0.1 * std::pow(std::tgamma(0.1), 2) / kPi;
    CHECK(capture_constant(Dimension(2), StabilityIndex(a)) ==
          doctest::Approx(expect2).epsilon(1e-12));
}

TEST_CASE("ball inverse constant") {
    CHECK(ball_inverse_constant(Dimension(2), StabilityIndex(0.5)) ==
          doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-13));
    CHECK(ball_inverse_constant(Dimension(2), StabilityIndex(0.25)) ==
          doctest::Approx(std::sin(0.75 * kPi) / (kPi * kPi)).epsilon(1e-13));
    // n = 3, a = 1/2: radial integral is pi/2, whole expression 1/(2 pi^2)
    CHECK(ball_inverse_constant(Dimension(3), StabilityIndex(0.5)) ==
          doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-13));
    // closed form sin(pi a) Gamma(n/2) / pi^{n/2+1} (Beta reduction)
    for (int n : {2, 3, 4}) {
        for (double a : {0.15, 0.4, 0.85}) {
            const double direct = ball_inverse_constant(Dimension(n), StabilityIndex(a));
            const double reduced = std::sin(kPi * a) * std::tgamma(0.5 * n) /
                                   std::pow(kPi, 0.5 * n + 1.0);
            CHECK(direct == doctest::Approx(reduced).epsilon(1e-12));
        }
    }
}

TEST_CASE("weight integral") {
    CHECK(weight_integral(Dimension(2), StabilityIndex(0.5)) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-13));
    CHECK(weight_integral(Dimension(3), StabilityIndex(0.5)) ==
          doctest::Approx(kPi * kPi).epsilon(1e-13));
    // a -> 0 limit: ball area pi
    CHECK(weight_integral(Dimension(2), StabilityIndex(1e-12)) ==
          doctest::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("weight integral matches quadrature") {
    // int_B (1-|x|^2)^{-a} dx = |S^{n-1}| int_0^1 r^{n-1}(1-r^2)^{-a} dr;
    // integrate in the offset q = 1-r with geometric panels toward q = 0.
    const QuadRule g = gauss_legendre(12);
    for (int n : {2, 3}) {
        for (double a : {0.25, 0.5, 0.75}) {
            double radial = 0.0;
            const auto edges = graded_edges(1.0, 2.0, 1e-40);
            for (std::size_t i = 1; i + 1 < edges.size(); ++i) {
                const QuadRule p = mapped(g, edges[i], edges[i + 1]);
                for (std::size_t j = 0; j < p.x.size(); ++j) {
                    const double q = p.x[j];
                    const double r = 1.0 - q;
                    radial += p.w[j] * std::pow(r, n - 1.0) * std::pow(q * (2.0 - q), -a);
                }
            }
            const double quad = sphere_surface(n) * radial;
            CHECK(quad ==
                  doctest::Approx(weight_integral(Dimension(n), StabilityIndex(a))).epsilon(1e-8));
        }
    }
}

TEST_CASE("consistency identity across the grid") {
    for (int n : {2, 3, 4})
        for (int ia = 1; ia <= 9; ++ia)
            CHECK(identity_residual(Dimension(n), StabilityIndex(0.1 * ia)) < 1e-10);
}

TEST_CASE("error term cases") {
    const Dimension n2(2);
    CHECK(error_term(n2, StabilityIndex(0.25), 0.1, ErrorTermKind::General) ==
          doctest::Approx(std::pow(0.1, 0.5)).epsilon(1e-14));
    CHECK(error_term(n2, StabilityIndex(0.5), 0.1, ErrorTermKind::General) ==
          doctest::Approx(0.1 * std::log(10.0)).epsilon(1e-14));
    CHECK(error_term(n2, StabilityIndex(0.5), 0.1, ErrorTermKind::Torus) ==
          doctest::Approx(0.1 * std::log(10.0)).epsilon(1e-14));
    CHECK(error_term(n2, StabilityIndex(0.75), 0.1, ErrorTermKind::Torus) ==
          doctest::Approx(std::pow(0.1, 0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(error_term(n2, StabilityIndex(0.5), 1.0, ErrorTermKind::General),
                    std::invalid_argument);
}

TEST_CASE("error term monotone in eps") {
    // The alpha = 1/2 branch eps|log eps| peaks at 1/e < 0.5, so monotonicity
    // holds on (0, 1/e] there and on (0, 0.5] for the power-law branches.
    for (int n : {2, 3}) {
        for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            for (auto kind : {ErrorTermKind::General, ErrorTermKind::Torus}) {
                const double hi = a == 0.5 ? 1.0 / std::exp(1.0) : 0.5;
                double prev = 0.0;
                for (int i = 1; i <= 40; ++i) {
                    const double eps = hi * i / 40.0;
                    const double e = error_term(Dimension(n), StabilityIndex(a), eps, kind);
                    CHECK(e >= prev - 1e-15);
                    prev = e;
                }
            }
        }
    }
}

TEST_CASE("getoor ball mean exit") {
    CHECK(getoor_ball_mean_exit(Dimension(2), StabilityIndex(0.5), 0.0) ==
          doctest::Approx(2.0 / kPi).epsilon(1e-13));
    CHECK(getoor_ball_mean_exit(Dimension(3), StabilityIndex(0.5), 0.0) ==
          doctest::Approx(0.5).epsilon(1e-13));
    CHECK(getoor_ball_mean_exit(Dimension(2), StabilityIndex(0.5), 1.0 - 1e-12) ==
          doctest::Approx(0.0).epsilon(1e-5));
    CHECK_THROWS_AS(getoor_ball_mean_exit(Dimension(2), StabilityIndex(0.5), 1.0),
                    std::invalid_argument);
}

TEST_CASE("all constants positive on their domains") {
    for (int n : {2, 3, 4}) {
        for (int ia = 1; ia <= 19; ++ia) {
            const double a = 0.05 * ia;
            const Dimension d(n);
            const StabilityIndex s(a);
            CHECK(levy_constant(d, s) > 0.0);
            CHECK(capture_constant(d, s) > 0.0);
            CHECK(ball_inverse_constant(d, s) > 0.0);
            CHECK(weight_integral(d, s) > 0.0);
            CHECK(getoor_ball_mean_exit(d, s, 0.3) > 0.0);
        }
    }
}
