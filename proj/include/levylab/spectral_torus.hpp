#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "levylab/manifold.hpp"

// Fourier realization of the generator on T^n: -A = (-Delta)^alpha acts as
// the multiplier |2 pi k|^{2 alpha} on the integer frequency lattice
// (spectral collocation; exact for the continuum operator on band-limited
// data). The capture problem is solved in the (F, C) form: unknown density F
// on the grid points of the ball plus the constant C, with
//   u = A+(F - 1_Omega) + C,  u|ball = 0,  h^n sum F = |Omega_eps|_disc.

namespace levylab {

struct TorusGrid {
    int n;      // dimension, 2 or 3
    int N;      // points per axis, power of two, >= 16
    double h;   // 1/N

    TorusGrid(int n_, int N_);
    std::size_t size() const;
    // flat row-major index -> coordinates (i * h per axis)
    Vec point(std::size_t flat) const;
};

struct SpectralField {
    TorusGrid grid;
    std::vector<double> v; // grid values, row-major

    explicit SpectralField(TorusGrid g) : grid(g), v(g.size(), 0.0) {}
    double mean() const;
};

// FFTW-backed transforms for one grid; plans are private to the instance, so
// distinct solves can run concurrently on distinct instances.
class TorusTransform {
  public:
    explicit TorusTransform(TorusGrid g);
    ~TorusTransform();
    TorusTransform(const TorusTransform&) = delete;
    TorusTransform& operator=(const TorusTransform&) = delete;

    const TorusGrid& grid() const { return grid_; }

    // half-complex spectrum (last axis 0..N/2), unnormalized
    std::vector<std::complex<double>> forward(const SpectralField& f) const;
    SpectralField inverse(const std::vector<std::complex<double>>& spec) const;

    // A f: multiplier -|2 pi k|^{2 alpha}, zero on the mean mode
    SpectralField apply_generator(const SpectralField& f, double alpha) const;
    // A+ f: multiplier -|2 pi k|^{-2 alpha} off the mean mode, mean dropped
    SpectralField apply_pseudo_inverse(const SpectralField& f, double alpha) const;

    std::size_t spec_size() const { return spec_size_; }

  private:
    void apply_multiplier(const SpectralField& f, double exponent, SpectralField& out) const;

    TorusGrid grid_;
    std::size_t spec_size_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    mutable std::vector<double> real_buf_;
    mutable std::vector<std::complex<double>> cplx_buf_;
};

// Quadrature oracle for the torus multiplier: evaluates
//   C(n,alpha) int_{S^{n-1}} int_0^inf (cos(2 pi t k.v) - 1) t^{-1-2 alpha} dt dS(v)
// which must equal -|2 pi k|^{2 alpha}. n in {2,3}.
struct PolarMultiplier {
    double value;
    double error_estimate; // |value(refined) - value(base)|
};
PolarMultiplier multiplier_from_polar_integral(const std::vector<int>& k, double alpha, int n);

struct CaptureSolution {
    SpectralField u;
    std::vector<std::size_t> interior; // flat indices of the ball points
    std::vector<double> F;             // density on `interior`
    double C_eps = 0.0;                // = grid mean of u
    double residual = 0.0;             // max |A u + 1| at distance >= eps+3h from p0
    double mean_u = 0.0;
    long cg_iterations = 0;            // 0 on the dense path
};

// Solve A u = -1 off the closed ball B_eps(p0), u = 0 on it. Dense assembly
// for |interior| <= 4000 (one A+ application per indicator column), otherwise
// conjugate gradients on the negative-definite restricted operator,
// tolerance 1e-10.
CaptureSolution solve_capture(const TorusTransform& t, double alpha, double eps,
                              const Vec& p0);

// Column of the discrete Green function: G(., q) = A+ applied to the grid
// delta at q (h^{-n} at the nearest grid point), mean-zero by construction.
SpectralField green_function(const TorusTransform& t, double alpha, const Vec& q);

struct DirichletReport {
    double max_symmetry_violation = 0.0; // relative
    double max_quadratic_form = 0.0;     // max over fields of <u, A u>, clipped at 0
    double max_gap_violation = 0.0;      // max of <u,Au> + (2 pi)^{2a} |u - mean|^2
};

// Random-field checks of symmetry, nonpositivity and the spectral gap
// <u, A u> <= -(2 pi)^{2 alpha} ||u - mean(u)||^2.
DirichletReport dirichlet_check(const TorusTransform& t, double alpha, int trials,
                                std::uint64_t seed = 2024);

} // namespace levylab
