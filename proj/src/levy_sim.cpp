#include "levylab/levy_sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <thread>

namespace levylab {

double jump_rate(const JumpProcessConfig& cfg) {
    const Dimension n(cfg.manifold.dim());
    const StabilityIndex a(cfg.alpha);
    return levy_constant(n, a) * sphere_surface(n.value()) *
           std::pow(cfg.delta, -2.0 * cfg.alpha) / (2.0 * cfg.alpha);
}

double small_jump_variance_rate(const JumpProcessConfig& cfg) {
    const Dimension n(cfg.manifold.dim());
    const StabilityIndex a(cfg.alpha);
    return levy_constant(n, a) * sphere_surface(n.value()) *
           std::pow(cfg.delta, 2.0 - 2.0 * cfg.alpha) /
           (n.value() * (2.0 - 2.0 * cfg.alpha));
}

Jump sample_jump(const JumpProcessConfig& cfg, const Point& p, Rng& rng) {
    const double rate = jump_rate(cfg);
    const double wait = rng.exponential(rate);
    const double u = rng.uniform_pos();
    const double r = cfg.delta * std::pow(u, -1.0 / (2.0 * cfg.alpha));
    assert(r >= cfg.delta);
    const Direction dir = cfg.manifold.uniform_direction(p, rng);
    return Jump{wait, cfg.manifold.exp_map(p, dir, r)};
}

namespace {

bool captured(const JumpProcessConfig& cfg, const Point& q, const Point& target, double eps) {
    if (cfg.manifold.kind() == ManifoldKind::Euclidean) return q.x.norm() >= 1.0;
    return cfg.manifold.distance(q, target) <= eps;
}

// Tangent Brownian increment with variance s2 per coordinate, applied via the
// exponential map.
Point gaussian_kick(const Manifold& m, const Point& p, double s2, Rng& rng) {
    Direction dir = m.uniform_direction(p, rng); // isotropic direction
    const int n = m.dim();
    // |N(0, s2 I_n)| has the law of sqrt(s2) * chi_n; build it from normals to
    // keep the draw count direction-independent.
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.normal();
        q += g * g;
    }
    return m.exp_map(p, dir, std::sqrt(s2 * q));
}

} // namespace

TrajectoryResult simulate_capture(const JumpProcessConfig& cfg, const Point& start,
                                  const Point& target, double eps, Rng& rng) {
    TrajectoryResult out;
    if (captured(cfg, start, target, eps)) return out; // tau = 0
    const double rate = jump_rate(cfg);
    const double s2rate = cfg.gaussian_correction ? small_jump_variance_rate(cfg) : 0.0;
    Point p = start;
    double t = 0.0;
    for (;;) {
        const double wait = rng.exponential(rate);
        if (t + wait > cfg.t_max) {
            out.tau = cfg.t_max;
            out.censored = true;
            return out;
        }
        t += wait;
        ++out.n_jumps;
        if (cfg.gaussian_correction)
            p = gaussian_kick(cfg.manifold, p, s2rate * wait, rng); // diffuse over the wait
        const double u = rng.uniform_pos();
        const double r = cfg.delta * std::pow(u, -1.0 / (2.0 * cfg.alpha));
        const Direction dir = cfg.manifold.uniform_direction(p, rng);
        p = cfg.manifold.exp_map(p, dir, r);
        if (captured(cfg, p, target, eps)) {
            out.tau = t;
            return out;
        }
    }
}

CaptureEstimate estimate_capture(const JumpProcessConfig& cfg, const StartSpec& start,
                                 const Point& target, double eps, long n_samples,
                                 int n_threads, std::vector<TrajectoryResult>* trajectories) {
    if (n_samples < 100)
        throw std::invalid_argument("estimate_capture: need at least 100 samples");
    std::vector<TrajectoryResult> res(static_cast<std::size_t>(n_samples));

    auto run_range = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            Rng rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(i));
            Point s = start.fixed ? *start.fixed : cfg.manifold.uniform_point(rng);
            res[static_cast<std::size_t>(i)] = simulate_capture(cfg, s, target, eps, rng);
        }
    };

    if (n_threads <= 1) {
        run_range(0, n_samples);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (n_samples + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const long lo = w * chunk;
            const long hi = std::min(n_samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    CaptureEstimate est;
    est.n_samples = n_samples;
    est.delta_used = cfg.delta;
    double sum = 0.0;
    for (const auto& r : res) {
        sum += r.tau;
        if (r.censored) ++est.n_censored;
    }
    est.mean = sum / static_cast<double>(n_samples);
    double ss = 0.0;
    for (const auto& r : res) {
        const double d = r.tau - est.mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(n_samples - 1);
    est.half_width_95 = 1.96 * std::sqrt(var / static_cast<double>(n_samples));
    if (trajectories) *trajectories = std::move(res);
    return est;
}

DeltaStudy delta_refinement_study(const JumpProcessConfig& cfg, const StartSpec& start,
                                  const Point& target, double eps,
                                  const std::vector<double>& deltas, long n_samples,
                                  int n_threads) {
    if (deltas.size() < 2)
        throw std::invalid_argument("delta_refinement_study: need at least two deltas");
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] < deltas[i - 1]))
            throw std::invalid_argument("delta_refinement_study: deltas must be strictly decreasing");

    DeltaStudy study;
    for (double d : deltas) {
        JumpProcessConfig c = cfg;
        c.delta = d;
        if (cfg.manifold.kind() != ManifoldKind::Euclidean && d >= eps)
            study.delta_ge_eps_warning = true;
        study.rows.push_back({d, estimate_capture(c, start, target, eps, n_samples, n_threads)});
    }
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < study.rows.size(); ++i) {
        inc &= study.rows[i].estimate.mean >= study.rows[i - 1].estimate.mean;
        dec &= study.rows[i].estimate.mean <= study.rows[i - 1].estimate.mean;
    }
    study.monotone_trend = inc || dec;
    const std::size_t m = study.rows.size();
    if (m >= 3) {
        const double a0 = study.rows[m - 3].estimate.mean;
        const double a1 = study.rows[m - 2].estimate.mean;
        const double a2 = study.rows[m - 1].estimate.mean;
        const double den = a2 - 2.0 * a1 + a0;
        // Aitken delta^2; no theoretical rate is claimed for the bias, so this
        // is a heuristic summary only.
        study.richardson = std::abs(den) > 1e-300 ? a2 - (a2 - a1) * (a2 - a1) / den : a2;
    } else {
        study.richardson = study.rows.back().estimate.mean;
    }
    return study;
}

} // namespace levylab
