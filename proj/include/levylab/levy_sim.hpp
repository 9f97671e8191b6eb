#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "levylab/constants.hpp"
#include "levylab/manifold.hpp"
#include "levylab/rng.hpp"

// Compound-Poisson simulation of the pure-jump isotropic 2a-stable process.
// Jumps below the cutoff delta are dropped (the measure is symmetric, so no
// compensation is needed); what remains is a finite-rate jump process with
//   rate      lambda_delta = C(n,a) omega_{n-1} delta^{-2a} / (2a),
//   radius    r = delta U^{-1/(2a)},  U ~ Uniform(0,1],
//   direction uniform on the unit tangent sphere.
// The process sits still between jumps, so capture is checked exactly at jump
// arrival points. The optional Gaussian correction adds, at each jump time, a
// tangent Brownian increment whose variance rate matches the second moment of
// the truncated small jumps (Asmussen-Rosinski style); with it enabled the
// arrival-only capture check becomes approximate.

namespace levylab {

struct JumpProcessConfig {
    double alpha;                    // stability index, in (0,1)
    double delta;                    // small-jump cutoff, geodesic length units
    Manifold manifold;
    std::uint64_t seed = 0;
    bool gaussian_correction = false;
    double t_max;                    // censoring horizon

    JumpProcessConfig(double alpha_, double delta_, Manifold m, std::uint64_t seed_,
                      double t_max_, bool gaussian_correction_ = false)
        : alpha(alpha_), delta(delta_), manifold(m), seed(seed_),
          gaussian_correction(gaussian_correction_), t_max(t_max_) {
        StabilityIndex check_a(alpha);
        if (!(delta > 0.0)) throw std::invalid_argument("JumpProcessConfig: delta must be > 0");
        if (!(t_max > 0.0)) throw std::invalid_argument("JumpProcessConfig: t_max must be > 0");
    }
};

struct CaptureEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    long n_samples = 0;
    long n_censored = 0; // censored trajectories contribute t_max (downward bias)
    double delta_used = 0.0;
};

struct TrajectoryResult {
    double tau = 0.0;
    bool censored = false;
    long n_jumps = 0;
};

// Total rate of the delta-truncated Levy measure.
double jump_rate(const JumpProcessConfig& cfg);

// Per-coordinate variance rate of the dropped small jumps,
// sigma^2(delta) = C(n,a) omega_{n-1} delta^{2-2a} / (n (2-2a)).
double small_jump_variance_rate(const JumpProcessConfig& cfg);

// One jump from p: waiting time and landing point.
struct Jump {
    double wait;
    Point to;
};
Jump sample_jump(const JumpProcessConfig& cfg, const Point& p, Rng& rng);

// First entry into the closed geodesic ball B_eps(target); on Euclidean space
// the capture event is instead exit from the closed unit ball (the Getoor
// setup) and `target`/`eps` are ignored.
TrajectoryResult simulate_capture(const JumpProcessConfig& cfg, const Point& start,
                                  const Point& target, double eps, Rng& rng);

struct StartSpec {
    std::optional<Point> fixed; // nullopt = uniform over the manifold
};

// Monte Carlo estimate over n_samples independent trajectories. Trajectory i
// draws from stream_rng(seed, i); the reduction is in index order, so the
// result is identical for any worker count.
CaptureEstimate estimate_capture(const JumpProcessConfig& cfg, const StartSpec& start,
                                 const Point& target, double eps, long n_samples,
                                 int n_threads = 1,
                                 std::vector<TrajectoryResult>* trajectories = nullptr);

struct DeltaStudyRow {
    double delta;
    CaptureEstimate estimate;
};

struct DeltaStudy {
    std::vector<DeltaStudyRow> rows;
    bool monotone_trend = false;  // means ordered monotonically across deltas
    double richardson = 0.0;      // Aitken extrapolation of the last three means
    bool delta_ge_eps_warning = false;
};

// One estimate per delta (strictly decreasing deltas required); used to
// measure the truncation bias empirically.
DeltaStudy delta_refinement_study(const JumpProcessConfig& cfg, const StartSpec& start,
                                  const Point& target, double eps,
                                  const std::vector<double>& deltas, long n_samples,
                                  int n_threads = 1);

} // namespace levylab
