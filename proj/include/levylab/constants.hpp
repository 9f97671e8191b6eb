#pragma once

#include <stdexcept>

// Closed-form constants of the isotropic 2a-stable jump process and of the
// narrow-capture expansion. Everything here is a pure function of (n, alpha);
// all Gamma-function evaluations go through std::lgamma / reflection so the
// internal consistency identity
//
//   capture_constant(n,a) * ball_inverse_constant(n,a) * weight_integral(n,a)
//     == signed_levy_constant(n,-a)
//
// holds to ~1e-12 absolute in double precision.

namespace levylab {

// Stability index alpha, constrained to the open interval (0,1).
class StabilityIndex {
  public:
    explicit StabilityIndex(double a) : a_(a) {
        if (!(a > 0.0) || !(a < 1.0))
            throw std::invalid_argument("StabilityIndex: alpha must lie in (0,1)");
    }
    double value() const { return a_; }

  private:
    double a_;
};

// Ambient dimension n >= 2.
class Dimension {
  public:
    explicit Dimension(int n) : n_(n) {
        if (n < 2) throw std::invalid_argument("Dimension: n must be >= 2");
    }
    int value() const { return n_; }

  private:
    int n_;
};

// |Gamma(-a)| for a in (0,1), via the reflection formula.
double abs_gamma_neg(double a);

// Surface measure of the unit sphere S^{n-1} in R^n.
double sphere_surface(int n);

// C(n,a) = 4^a Gamma(n/2+a) / (pi^{n/2} |Gamma(-a)|), the Levy-measure
// normalization that makes the flat-space generator equal to -(-Delta)^a.
double levy_constant(Dimension n, StabilityIndex alpha);

// Same formula continued to a in (-1,0) u (0,1). For a < 0 this is the Riesz
// kernel constant of the inverse fractional Laplacian.
double signed_levy_constant(Dimension n, double alpha);

// Narrow-capture constant c(n,a): average capture time ~ eps^{2a-n} |M| c(n,a).
// Evaluated as 4^{-a} Gamma(n/2-a) Gamma(n/2-a+1) / (pi^{n/2} Gamma(n/2)),
// which agrees with the consistency identity above for every n >= 2.
double capture_constant(Dimension n, StabilityIndex alpha);

// c_a in the unit-ball inversion L_a^{-1} 1 = -c_a (1-|x|^2)^{-a}.
double ball_inverse_constant(Dimension n, StabilityIndex alpha);

// W(n,a) = integral over the unit ball of (1-|x|^2)^{-a} dx
//        = pi^{n/2} Gamma(1-a) / Gamma(n/2+1-a).
// The Beta-function reduction is ours; the source only uses the integral form.
double weight_integral(Dimension n, StabilityIndex alpha);

enum class ErrorTermKind { General, Torus };

// Relative error band E(a,eps) of the capture expansion.
// General (sphere/Anosov):  eps^{2a} (a<1/2) | eps|log eps| (a=1/2) | max(eps, eps^{n-2a}) (a>1/2)
// Torus:                    max(eps, eps^{n-2a}) (a!=1/2) | eps|log eps| (a=1/2)
double error_term(Dimension n, StabilityIndex alpha, double eps, ErrorTermKind kind);

// Expected time for the 2a-stable isotropic process to exit the unit
// Euclidean ball from x, |x| < 1:
//   Gamma(n/2) / (4^a Gamma(1+a) Gamma(n/2+a)) * (1-|x|^2)^a.
// External closed form, kept quarantined as an oracle: its only claim to
// correctness inside this project is the delta-refined Monte Carlo study.
double getoor_ball_mean_exit(Dimension n, StabilityIndex alpha, double abs_x);

// Residual of the consistency identity at (n, alpha); used by tests and the
// `constants` CLI verb.
double identity_residual(Dimension n, StabilityIndex alpha);

} // namespace levylab
