#include "levylab/spectral_torus.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "levylab/constants.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/rng.hpp"

namespace levylab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

// FFTW plan creation/destruction is not thread-safe.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

TorusGrid::TorusGrid(int n_, int N_) : n(n_), N(N_), h(1.0 / N_) {
    if (n < 2 || n > 3) throw std::invalid_argument("TorusGrid: n must be 2 or 3");
    if (N < 16 || (N & (N - 1)) != 0)
        throw std::invalid_argument("TorusGrid: N must be a power of two >= 16");
}

std::size_t TorusGrid::size() const {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(N);
    return s;
}

Vec TorusGrid::point(std::size_t flat) const {
    Vec x = Vec::zeros(n);
    for (int d = n - 1; d >= 0; --d) {
        x[d] = static_cast<double>(flat % static_cast<std::size_t>(N)) * h;
        flat /= static_cast<std::size_t>(N);
    }
    return x;
}

double SpectralField::mean() const {
    double s = 0.0;
    for (double a : v) s += a;
    return s / static_cast<double>(v.size());
}

TorusTransform::TorusTransform(TorusGrid g) : grid_(g) {
    const int N = grid_.N;
    spec_size_ = 1;
    for (int d = 0; d < grid_.n - 1; ++d) spec_size_ *= static_cast<std::size_t>(N);
    spec_size_ *= static_cast<std::size_t>(N / 2 + 1);
    real_buf_.resize(grid_.size());
    cplx_buf_.resize(spec_size_);

    std::vector<int> dims(static_cast<std::size_t>(grid_.n), N);
    std::lock_guard<std::mutex> lock(fftw_mutex());
    // FFTW_ESTIMATE keeps planning deterministic run-to-run.
    plan_fwd_ = fftw_plan_dft_r2c(grid_.n, dims.data(), real_buf_.data(),
                                  reinterpret_cast<fftw_complex*>(cplx_buf_.data()),
                                  FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r(grid_.n, dims.data(),
                                  reinterpret_cast<fftw_complex*>(cplx_buf_.data()),
                                  real_buf_.data(), FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("TorusTransform: FFTW planning failed");
}

TorusTransform::~TorusTransform() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

std::vector<std::complex<double>> TorusTransform::forward(const SpectralField& f) const {
    real_buf_ = f.v;
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), real_buf_.data(),
                         reinterpret_cast<fftw_complex*>(cplx_buf_.data()));
    return cplx_buf_;
}

SpectralField TorusTransform::inverse(const std::vector<std::complex<double>>& spec) const {
    cplx_buf_ = spec; // c2r destroys its input
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_),
                         reinterpret_cast<fftw_complex*>(cplx_buf_.data()), real_buf_.data());
    SpectralField out(grid_);
    const double scale = 1.0 / static_cast<double>(grid_.size());
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = real_buf_[i] * scale;
    return out;
}

void TorusTransform::apply_multiplier(const SpectralField& f, double exponent,
                                      SpectralField& out) const {
    const int N = grid_.N;
    const int n = grid_.n;
    auto spec = forward(f);

    // signed frequencies; the Nyquist index N/2 keeps its natural magnitude
    std::vector<double> ksq_axis(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const int k = j <= N / 2 ? j : j - N;
        ksq_axis[static_cast<std::size_t>(j)] = static_cast<double>(k) * static_cast<double>(k);
    }
    const int last = N / 2 + 1;
    const std::size_t rows = spec_size_ / static_cast<std::size_t>(last);
    for (std::size_t row = 0; row < rows; ++row) {
        std::size_t rest = row;
        double ksq_row = 0.0;
        for (int d = 0; d < n - 1; ++d) {
            ksq_row += ksq_axis[rest % static_cast<std::size_t>(N)];
            rest /= static_cast<std::size_t>(N);
        }
        for (int j = 0; j < last; ++j) {
            const std::size_t idx = row * static_cast<std::size_t>(last) +
                                    static_cast<std::size_t>(j);
            const double ksq = ksq_row + static_cast<double>(j) * static_cast<double>(j);
            if (ksq == 0.0) {
                spec[idx] = 0.0; // mean mode: kernel of A, dropped by A+
                continue;
            }
            spec[idx] *= -std::pow(kTwoPi * kTwoPi * ksq, exponent);
        }
    }
    out = inverse(spec);
}

SpectralField TorusTransform::apply_generator(const SpectralField& f, double alpha) const {
    SpectralField out(grid_);
    apply_multiplier(f, alpha, out);
    return out;
}

SpectralField TorusTransform::apply_pseudo_inverse(const SpectralField& f, double alpha) const {
    SpectralField out(grid_);
    apply_multiplier(f, -alpha, out);
    return out;
}

namespace {

// J(a) = int_0^inf (cos(a t) - 1) t^{-1-2al} dt, a > 0, by direct quadrature:
// graded panels toward t = 0, oscillation-resolving panels up to T = 600/a,
// then the monomial tail exactly and the cosine tail by integration by parts.
double J_of_a(double a, double twoal, const QuadRule& gq) {
    if (a == 0.0) return 0.0;
    // cos(a t) - 1 evaluated as -2 sin^2(a t / 2): the direct form carries an
    // O(ulp) absolute error that the t^{-1-2al} weight amplifies fatally
    auto cosm1 = [a](double t) {
        const double s = std::sin(0.5 * a * t);
        return -2.0 * s * s;
    };
    const double t1 = 0.5 / a;
    const double T = 600.0 / a;
    double sum = 0.0;

    const auto edges = graded_edges(t1, 2.0, 1e-14);
    for (std::size_t i = 1; i + 1 < edges.size(); ++i) {
        const QuadRule q = mapped(gq, edges[i], edges[i + 1]);
        for (std::size_t j = 0; j < q.x.size(); ++j)
            sum += q.w[j] * cosm1(q.x[j]) * std::pow(q.x[j], -1.0 - twoal);
    }
    // analytic piece below the smallest edge: cos(at)-1 ~ -a^2 t^2 / 2
    sum += -0.5 * a * a * std::pow(edges[1], 2.0 - twoal) / (2.0 - twoal);

    // panel widths grow geometrically out of t1 (the t^{-1-2al} factor varies
    // fastest there) and cap at a quarter oscillation
    const double wmax = (kTwoPi / a) / 4.0;
    double lo = t1, w = t1 / 2.0;
    while (lo < T) {
        w = std::min(w * 1.6, wmax);
        const double hi = std::min(T, lo + w);
        const QuadRule q = mapped(gq, lo, hi);
        for (std::size_t j = 0; j < q.x.size(); ++j)
            sum += q.w[j] * cosm1(q.x[j]) * std::pow(q.x[j], -1.0 - twoal);
        lo = hi;
    }

    sum += -std::pow(T, -twoal) / twoal; // -int_T^inf t^{-1-2al} dt
    // int_T^inf cos(at) t^{-1-2al} dt, four IBP terms; remainder O((aT)^{-4})
    const double c1 = 1.0 + twoal, c2 = 2.0 + twoal, c3 = 3.0 + twoal;
    const double sT = std::sin(a * T), cT = std::cos(a * T);
    double tail = -sT * std::pow(T, -c1) / a;
    tail += c1 * cT * std::pow(T, -c2) / (a * a);
    tail += c1 * c2 * sT * std::pow(T, -c3) / (a * a * a);
    tail += -c1 * c2 * c3 * cT * std::pow(T, -4.0 - twoal) / (a * a * a * a);
    sum += tail;
    return sum;
}

double polar_integral_once(double absk, double alpha, int n, int refine) {
    const double twoal = 2.0 * alpha;
    const QuadRule gq = gauss_legendre(16 * refine);
    const QuadRule ga = gauss_legendre(12 * refine);
    double angular = 0.0;
    if (n == 2) {
        // int_{S^1} = 4 int_0^{pi/2}; J(2 pi |k| cos th) has a |.|^{2al} kink
        // where cos th = 0, so integrate in the offset q = pi/2 - th with
        // geometric grading toward q = 0.
        const auto edges = graded_edges(0.5 * kPi, 2.0, 1e-12);
        for (std::size_t i = 1; i + 1 < edges.size(); ++i) {
            const QuadRule q = mapped(ga, edges[i], edges[i + 1]);
            for (std::size_t j = 0; j < q.x.size(); ++j)
                angular += 4.0 * q.w[j] * J_of_a(kTwoPi * absk * std::sin(q.x[j]), twoal, gq);
        }
    } else {
        // int_{S^2} = 4 pi int_0^1 dc with the kink at c = 0
        const auto edges = graded_edges(1.0, 2.0, 1e-12);
        for (std::size_t i = 1; i + 1 < edges.size(); ++i) {
            const QuadRule q = mapped(ga, edges[i], edges[i + 1]);
            for (std::size_t j = 0; j < q.x.size(); ++j)
                angular += 4.0 * kPi * q.w[j] * J_of_a(kTwoPi * absk * q.x[j], twoal, gq);
        }
    }
    return signed_levy_constant(Dimension(n), alpha) * angular;
}

} // namespace

PolarMultiplier multiplier_from_polar_integral(const std::vector<int>& k, double alpha, int n) {
    if (n != 2 && n != 3)
        throw std::invalid_argument("multiplier_from_polar_integral: n must be 2 or 3");
    if (static_cast<int>(k.size()) != n)
        throw std::invalid_argument("multiplier_from_polar_integral: k has wrong length");
    double ksq = 0.0;
    for (int c : k) ksq += static_cast<double>(c) * static_cast<double>(c);
    if (ksq == 0.0)
        throw std::invalid_argument("multiplier_from_polar_integral: k must be nonzero");
    const double absk = std::sqrt(ksq);
    const double base = polar_integral_once(absk, alpha, n, 1);
    const double fine = polar_integral_once(absk, alpha, n, 2);
    return PolarMultiplier{fine, std::abs(fine - base)};
}

namespace {

std::vector<std::size_t> ball_indices(const TorusGrid& g, const Vec& p0, double eps) {
    const Manifold torus(ManifoldKind::FlatTorus, g.n);
    const Point c = torus.make_point(p0);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point p{g.point(i)};
        if (torus.distance(p, c) <= eps) idx.push_back(i);
    }
    return idx;
}

} // namespace

CaptureSolution solve_capture(const TorusTransform& t, double alpha, double eps, const Vec& p0) {
    const TorusGrid& g = t.grid();
    StabilityIndex check_a(alpha);
    if (eps < 3.0 * g.h)
        throw std::invalid_argument("solve_capture: eps must be >= 3h to resolve the ball");

    const auto interior = ball_indices(g, p0, eps);
    const auto m = static_cast<Eigen::Index>(interior.size());
    const std::size_t total = g.size();
    if (m == 0 || static_cast<std::size_t>(m) == total)
        throw std::runtime_error("solve_capture: degenerate interior set");

    SpectralField ones_om(g);
    for (double& x : ones_om.v) x = 1.0;
    for (std::size_t i : interior) ones_om.v[i] = 0.0;

    const SpectralField Tones = t.apply_pseudo_inverse(ones_om, alpha);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) b[i] = Tones.v[interior[static_cast<std::size_t>(i)]];

    // x -> (-A) x on the interior set; symmetric positive definite
    auto neg_op = [&](const Eigen::VectorXd& x) {
        SpectralField gfield(g);
        for (Eigen::Index i = 0; i < m; ++i)
            gfield.v[interior[static_cast<std::size_t>(i)]] = x[i];
        const SpectralField Tx = t.apply_pseudo_inverse(gfield, alpha);
        Eigen::VectorXd y(m);
        for (Eigen::Index i = 0; i < m; ++i)
            y[i] = -Tx.v[interior[static_cast<std::size_t>(i)]];
        return y;
    };

    Eigen::VectorXd S1(m), S2(m);
    long iters = 0;
    if (m <= 4000) {
        // dense assembly: one A+ application per interior indicator column
        Eigen::MatrixXd A(m, m);
        SpectralField e(g);
        for (Eigen::Index j = 0; j < m; ++j) {
            std::fill(e.v.begin(), e.v.end(), 0.0);
            e.v[interior[static_cast<std::size_t>(j)]] = 1.0;
            const SpectralField col = t.apply_pseudo_inverse(e, alpha);
            for (Eigen::Index i = 0; i < m; ++i)
                A(i, j) = -col.v[interior[static_cast<std::size_t>(i)]];
        }
        const Eigen::LLT<Eigen::MatrixXd> llt(A);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("solve_capture: dense factorization failed (singular system)");
        S1 = llt.solve(b);
        S2 = llt.solve(Eigen::VectorXd::Ones(m));
    } else {
        auto cg = [&](const Eigen::VectorXd& rhs, Eigen::VectorXd& x) {
            x = Eigen::VectorXd::Zero(m);
            Eigen::VectorXd r = rhs;
            Eigen::VectorXd p = r;
            double rs = r.squaredNorm();
            const double tol2 = 1e-20 * rs; // relative residual 1e-10
            for (long it = 0; it < 100000; ++it) {
                const Eigen::VectorXd Ap = neg_op(p);
                const double step = rs / p.dot(Ap);
                x += step * p;
                r -= step * Ap;
                const double rs2 = r.squaredNorm();
                ++iters;
                if (rs2 < tol2) return;
                p = r + (rs2 / rs) * p;
                rs = rs2;
            }
            throw std::runtime_error("solve_capture: CG failed to converge");
        };
        cg(b, S1);
        cg(Eigen::VectorXd::Ones(m), S2);
    }

    // F = A^{-1}(b - C 1) = -S1 + C S2, pinned by h^n sum F = |Omega|_disc
    const double target_sum = static_cast<double>(total) - static_cast<double>(m);
    const double C = (target_sum + S1.sum()) / S2.sum();

    CaptureSolution sol{SpectralField(g)};
    sol.interior = interior;
    sol.F.resize(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
        sol.F[static_cast<std::size_t>(i)] = -S1[i] + C * S2[i];
    sol.C_eps = C;
    sol.cg_iterations = iters;

    SpectralField rhs_field(g);
    for (std::size_t i = 0; i < total; ++i) rhs_field.v[i] = -ones_om.v[i];
    for (Eigen::Index i = 0; i < m; ++i)
        rhs_field.v[interior[static_cast<std::size_t>(i)]] += sol.F[static_cast<std::size_t>(i)];
    sol.u = t.apply_pseudo_inverse(rhs_field, alpha);
    for (double& x : sol.u.v) x += C;
    sol.mean_u = sol.u.mean();

    const SpectralField Au = t.apply_generator(sol.u, alpha);
    const Manifold torus(ManifoldKind::FlatTorus, g.n);
    const Point center = torus.make_point(p0);
    double worst = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        const Point p{g.point(i)};
        if (torus.distance(p, center) >= eps + 3.0 * g.h)
            worst = std::max(worst, std::abs(Au.v[i] + 1.0));
    }
    sol.residual = worst;
    return sol;
}

SpectralField green_function(const TorusTransform& t, double alpha, const Vec& q) {
    const TorusGrid& g = t.grid();
    std::size_t flat = 0;
    for (int d = 0; d < g.n; ++d) {
        long idx = std::lround(q[static_cast<std::size_t>(d)] / g.h);
        idx = ((idx % g.N) + g.N) % g.N;
        flat = flat * static_cast<std::size_t>(g.N) + static_cast<std::size_t>(idx);
    }
    SpectralField delta(g);
    delta.v[flat] = std::pow(static_cast<double>(g.N), g.n); // h^{-n}
    return t.apply_pseudo_inverse(delta, alpha);
}

DirichletReport dirichlet_check(const TorusTransform& t, double alpha, int trials,
                                std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("dirichlet_check: trials must be >= 1");
    const TorusGrid& g = t.grid();
    const double hn = std::pow(g.h, g.n);
    DirichletReport rep;
    const double gap = std::pow(kTwoPi, 2.0 * alpha); // smallest nonzero multiplier of -A

    auto inner = [&](const SpectralField& a, const SpectralField& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.v.size(); ++i) s += a.v[i] * b.v[i];
        return s * hn;
    };

    Rng rng(seed);
    for (int it = 0; it < trials; ++it) {
        SpectralField u(g), v(g);
        for (auto& x : u.v) x = rng.normal();
        for (auto& x : v.v) x = rng.normal();
        const SpectralField Au = t.apply_generator(u, alpha);
        const SpectralField Av = t.apply_generator(v, alpha);
        const double uav = inner(u, Av), auv = inner(Au, v);
        const double scale = std::max({std::abs(uav), std::abs(auv), 1e-300});
        rep.max_symmetry_violation =
            std::max(rep.max_symmetry_violation, std::abs(uav - auv) / scale);
        const double quad = inner(u, Au);
        rep.max_quadratic_form = std::max(rep.max_quadratic_form, quad);

        const double um = u.mean();
        double nrm2 = 0.0;
        for (double x : u.v) nrm2 += (x - um) * (x - um);
        nrm2 *= hn;
        rep.max_gap_violation = std::max(rep.max_gap_violation, quad + gap * nrm2);
    }
    return rep;
}

} // namespace levylab
