// Acceptance suite: one line per criterion, PASS/FAIL, exit 0 iff all pass.
// Tolerances are pinned here verbatim; nothing is routed through config.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "levylab/ball_integral.hpp"
#include "levylab/constants.hpp"
#include "levylab/fit.hpp"
#include "levylab/levy_sim.hpp"
#include "levylab/manifold.hpp"
#include "levylab/sphere_spectral.hpp"
#include "levylab/spectral_torus.hpp"

using namespace levylab;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("criterion %2d [%s] %s: %s\n", idx, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

// ---------------------------------------------------------------- criterion 1

void criterion_constants_identity() {
    double worst = 0.0;
    for (int n : {2, 3, 4})
        for (int ia = 1; ia <= 9; ++ia)
            worst = std::max(worst, identity_residual(Dimension(n), StabilityIndex(0.1 * ia)));
    char buf[128];
    std::snprintf(buf, sizeof buf, "max |c*c_a*W - C(n,-a)| = %.3e (tol 1e-10)", worst);
    report(1, "constants identity", worst < 1e-10, buf);
}

// ---------------------------------------------------------------- criterion 2

void criterion_torus_multiplier() {
    double worst = 0.0;
    std::vector<std::vector<int>> ks = {{1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1},
                                        {3, 2}, {3, 3}, {4, 0}, {4, 1}, {4, 2}, {4, 3}, {5, 0}};
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (const auto& k : ks) {
            const double ksq = k[0] * k[0] + k[1] * k[1];
            const double want = -std::pow(kTwoPi * kTwoPi * ksq, alpha);
            const auto got = multiplier_from_polar_integral(k, alpha, 2);
            worst = std::max(worst, std::abs(got.value - want) / std::abs(want));
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max rel err = %.3e over |k|<=5, alpha in {.25,.5,.75} (tol 1e-6)",
                  worst);
    report(2, "torus multiplier equivalence", worst < 1e-6, buf);
}

// ---------------------------------------------------------------- criterion 3

void criterion_getoor() {
    const Manifold ball(ManifoldKind::Euclidean, 2);
    const double target_mean = 2.0 / kPi;
    JumpProcessConfig cfg(0.5, 1e-3, ball, 20240801ull, 50.0 * target_mean);
    StartSpec start;
    start.fixed = Point{Vec{0.0, 0.0}};
    const Point origin{Vec{0.0, 0.0}};
    const CaptureEstimate est = estimate_capture(cfg, start, origin, 0.0, 100000);
    const double dev = std::abs(est.mean - target_mean);
    const double censor_frac = static_cast<double>(est.n_censored) / est.n_samples;
    const bool pass = dev <= 3.0 * est.half_width_95 && censor_frac < 0.01;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "mean %.5f vs 2/pi %.5f (|diff| %.2e <= 3*ci %.2e), censored %.2f%%",
                  est.mean, target_mean, dev, 3.0 * est.half_width_95, 100.0 * censor_frac);
    report(3, "Getoor ball oracle", pass, buf);
}

// ------------------------------------------------------- criteria 4, 5 and 10

struct TorusSweepResult {
    double mean_eps01 = 0.0;
    double fingerprint_cosine = 0.0;
};

TorusSweepResult criterion_torus_scaling() {
    const std::vector<double> epses = {0.02, 0.035, 0.05, 0.075, 0.1};
    const double alpha = 0.5;
    const TorusGrid grid(2, 1024);
    const TorusTransform transform(grid);
    const Vec p0{0.5, 0.5};
    TorusSweepResult out;

    std::vector<std::pair<double, double>> pts;
    double geo_prefactor = 0.0;
    for (double eps : epses) {
        const CaptureSolution sol = solve_capture(transform, alpha, eps, p0);
        pts.emplace_back(eps, sol.mean_u);
        geo_prefactor += std::log(sol.mean_u * eps); // fixed paper exponent 2a-n = -1
        std::printf("    solve-torus eps=%.3f: mean_u=%.6f residual=%.2e |I|=%zu\n", eps,
                    sol.mean_u, sol.residual, sol.interior.size());
        if (eps == 0.1) out.mean_eps01 = sol.mean_u;
        if (eps == 0.05) {
            // criterion 10 data: rescaled F vs (1-|x/eps|^2)^{-1/2} at least one
            // cell inside the ball
            const Manifold torus(ManifoldKind::FlatTorus, 2);
            const Point center = torus.make_point(p0);
            double ff = 0.0, pp = 0.0, fp = 0.0;
            for (std::size_t i = 0; i < sol.interior.size(); ++i) {
                const Point p{grid.point(sol.interior[i])};
                const double d = torus.distance(p, center);
                if (d > eps - grid.h) continue;
                const double prof = std::pow(1.0 - (d / eps) * (d / eps), -alpha);
                const double f = sol.F[i];
                ff += f * f;
                pp += prof * prof;
                fp += f * prof;
            }
            out.fingerprint_cosine = fp / std::sqrt(ff * pp);
        }
    }
    geo_prefactor = std::exp(geo_prefactor / static_cast<double>(epses.size()));

    const FitResult fit = fit_scaling(pts);
    const double cref = capture_constant(Dimension(2), StabilityIndex(alpha));
    const bool slope_ok = std::abs(fit.slope + 1.0) <= 0.05;
    const bool prefactor_ok = std::abs(geo_prefactor / cref - 1.0) <= 0.20;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "slope %.4f (band -1.00+/-0.05)%s; prefactor %.4f vs c(2,1/2)=%.4f (within 20%%: %s)",
                  fit.slope,
                  slope_ok ? ""
                           : " -- the paper's own O(eps|log eps|) correction is ~0.15-0.23 on "
                             "this eps range and bends the finite-eps slope",
                  geo_prefactor, cref, prefactor_ok ? "yes" : "no");
    report(4, "torus capture scaling", slope_ok && prefactor_ok, buf);
    return out;
}

void criterion_mc_vs_spectral(double solver_mean) {
    const Manifold torus(ManifoldKind::FlatTorus, 2);
    const double predicted = solver_mean;
    JumpProcessConfig cfg(0.5, 1e-3, torus, 77813ull, 50.0 * predicted);
    const Point target = torus.make_point(Vec{0.5, 0.5});
    const CaptureEstimate est = estimate_capture(cfg, StartSpec{}, target, 0.1, 20000);
    const double dev = std::abs(est.mean - solver_mean);
    const bool pass = dev <= 3.0 * est.half_width_95;
    char buf[160];
    std::snprintf(buf, sizeof buf, "MC %.4f +/- %.4f vs solver %.4f (|diff| %.2e <= %.2e)",
                  est.mean, est.half_width_95, solver_mean, dev, 3.0 * est.half_width_95);
    report(5, "MC/spectral cross-validation", pass, buf);
}

// ---------------------------------------------------------------- criterion 6

void criterion_dirichlet() {
    const TorusGrid grid(2, 64);
    const TorusTransform transform(grid);
    const DirichletReport rep = dirichlet_check(transform, 0.5, 100);

    SpectralField ones(grid);
    for (auto& x : ones.v) x = 1.0;
    const SpectralField zero = transform.apply_generator(ones, 0.5);
    double a1 = 0.0;
    for (double x : zero.v) a1 = std::max(a1, std::abs(x));

    const bool pass = rep.max_symmetry_violation < 1e-10 && rep.max_quadratic_form <= 1e-12 &&
                      a1 < 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof buf, "sym %.2e, <u,Au> max %.2e, |A 1| %.2e (tols 1e-10/1e-12/1e-12)",
                  rep.max_symmetry_violation, rep.max_quadratic_form, a1);
    report(6, "Dirichlet-form suite", pass, buf);
}

// ---------------------------------------------------------------- criterion 7

void criterion_sphere_multipliers() {
    const auto table = sphere_multiplier_table(220, StabilityIndex(0.5));
    bool pass = table.lambdas[0] == 0.0;
    for (int l = 1; l <= 220; ++l) pass = pass && table.lambdas[static_cast<std::size_t>(l)] < 0.0;
    const double ratio = table.lambdas[200] / (-std::sqrt(200.0 * 201.0));
    pass = pass && std::abs(ratio - 1.0) < 0.05;

    bool alternating = true, banded = true;
    double prev = 0.0;
    for (int l = 50; l <= 200; ++l) {
        const double g = parity_gap(table, l);
        if (l > 50 && g * prev >= 0.0) alternating = false;
        prev = g;
        const double lg = l * std::abs(g);
        if (lg < 0.4 || lg > 0.6) banded = false; // frozen band [c1, c2]
    }
    // torus control: the same diagnostic on the smooth symbol decays to zero
    const double control50 = 50.0 * std::abs(torus_control_parity_gap(50, 0.5));
    const double control200 = 200.0 * std::abs(torus_control_parity_gap(200, 0.5));
    const bool control_ok = control200 < control50 && control200 < 0.01;

    pass = pass && alternating && banded && control_ok;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "l200 ratio %.5f, parity alternating=%d banded[0.4,0.6]=%d, control %.2e -> %.2e",
                  ratio, alternating ? 1 : 0, banded ? 1 : 0, control50, control200);
    report(7, "sphere multiplier structure", pass, buf);
}

// ---------------------------------------------------------------- criterion 8

void criterion_sphere_capture() {
    const StabilityIndex a(0.2);
    const int L = 400;
    const auto table = sphere_multiplier_table(L, a);
    const std::vector<double> epses = {0.3, 0.2, 0.15, 0.1};
    std::vector<std::pair<double, double>> mean_pts, dev_pts;
    bool negative = true;
    std::vector<double> devs;
    for (double eps : epses) {
        const ZonalSolution sol = solve_capture_zonal(a, eps, L, table);
        const double dev = antipodal_deviation(sol);
        std::printf("    solve-sphere eps=%.2f: a0=%.4f dev=%.5f cap_res=%.2e\n", eps,
                    sol.mean(), dev, sol.cap_residual);
        mean_pts.emplace_back(eps, sol.mean());
        devs.push_back(dev);
        negative = negative && dev < 0.0;
        if (dev != 0.0) dev_pts.emplace_back(eps, std::abs(dev));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < devs.size(); ++i)
        monotone = monotone && std::abs(devs[i]) > std::abs(devs[i - 1]);

    const FitResult mean_fit = fit_scaling(mean_pts);
    const bool mean_slope_ok = std::abs(mean_fit.slope + 1.6) <= 0.1;
    bool blow_slope_ok = false;
    double blow_slope = 0.0;
    if (dev_pts.size() >= 3) {
        blow_slope = fit_scaling(dev_pts).slope;
        blow_slope_ok = std::abs(blow_slope + 0.2) <= 0.15;
    }
    const bool pass = mean_slope_ok && negative && monotone && blow_slope_ok;
    char buf[360];
    std::snprintf(buf, sizeof buf,
                  "mean slope %.3f (band -1.6+/-0.1)%s; dev negative=%d monotone=%d; blow-up "
                  "slope %.3f (band -0.2+/-0.15)%s",
                  mean_fit.slope,
                  mean_slope_ok ? "" : " -- L=400 truncation deficit grows as eps shrinks",
                  negative ? 1 : 0, monotone ? 1 : 0, blow_slope,
                  blow_slope_ok ? ""
                                : " -- the unquantified o(eps^{-0.2}) remainder dominates the "
                                  "deviation at desk scale (stated limitation)");
    report(8, "sphere capture", pass, buf);
}

// ---------------------------------------------------------------- criterion 9

void criterion_ball_inverse() {
    std::vector<double> radii;
    for (int i = 0; i < 25; ++i) radii.push_back(0.9 * i / 24.0);
    double worst = 0.0;
    for (int n : {2, 3})
        for (double a : {0.25, 0.5, 0.75})
            worst = std::max(worst,
                             verify_inverse_formula(Dimension(n), StabilityIndex(a), radii));
    double center = 0.0;
    for (int n : {2, 3})
        center = std::max(center, verify_inverse_formula(Dimension(n), StabilityIndex(0.5), {0.0}));
    const bool pass = worst < 1e-3 && center < 1e-8;
    char buf[140];
    std::snprintf(buf, sizeof buf, "max residual %.2e (tol 1e-3), center %.2e (tol 1e-8)", worst,
                  center);
    report(9, "ball inverse formula", pass, buf);
}

void criterion_f_profile(double cosine) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "cosine similarity %.4f (tol > 0.95)", cosine);
    report(10, "F-profile fingerprint", cosine > 0.95, buf);
}

} // namespace

int main() {
    std::printf("levylab acceptance suite\n");
    criterion_constants_identity();
    criterion_torus_multiplier();
    criterion_getoor();
    const TorusSweepResult torus = criterion_torus_scaling();
    criterion_mc_vs_spectral(torus.mean_eps01);
    criterion_dirichlet();
    criterion_sphere_multipliers();
    criterion_sphere_capture();
    criterion_ball_inverse();
    criterion_f_profile(torus.fingerprint_cosine);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed (see lines above; desk-scale limitations are annotated)\n",
                g_failures);
    return 1;
}
