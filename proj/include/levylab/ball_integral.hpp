#pragma once

#include <functional>
#include <vector>

#include "levylab/constants.hpp"

// The unit-ball operator  L_a u(x) = -int_B u(y) |x-y|^{2a-n} dy  and checks
// of its explicit inversion L_a^{-1} 1 = -c_a (1-|x|^2)^{-a}. Quadrature is
// polar at x: the r^{n-1} Jacobian cancels the kernel singularity, leaving
// endpoint singularities at r = 0 (when a < 1/2) and at the ball boundary
// (integrand blow-up of u), both handled by geometric panel grading in the
// offset variable so no cancellation ever forms 1-|y|^2 by subtraction.

namespace levylab {

enum class BallResolution { Standard, High };

// Function on the unit ball. Radial functions are supplied as a callable of
// s = 1 - |y|^2 (computed stably by the quadrature); sampled radial data is
// interpolated; a general (non-radial) variant takes the point coordinates.
class BallFunction {
  public:
    using RadialFn = std::function<double(double s)>;         // s = 1 - |y|^2
    using PointFn = std::function<double(const std::vector<double>&)>;

    static BallFunction radial(int n, RadialFn f);
    // values on radial nodes in [0,1), piecewise-linear in r
    static BallFunction radial_samples(int n, std::vector<double> nodes,
                                       std::vector<double> values);
    static BallFunction general(int n, PointFn f);

    bool is_radial() const { return radial_ != nullptr; }
    int dim() const { return n_; }

    double eval_radial_s(double s) const; // radial only
    double eval_point(const std::vector<double>& y) const;

  private:
    int n_ = 0;
    RadialFn radial_;
    PointFn point_;
};

struct BallQuadratureParams {
    int angular_nodes;   // Gauss nodes in the polar angle variable
    int panel_nodes;     // Gauss nodes per radial panel
    double grading_floor;

    static BallQuadratureParams make(BallResolution r);
};

// L_a u at interior x (supplied by |x| and dimension for radial u, or by
// coordinates for general u). n in {2,3}.
double apply_L_alpha(const BallFunction& u, const std::vector<double>& x, double alpha,
                     const BallQuadratureParams& params);
double apply_L_alpha(const BallFunction& u, const std::vector<double>& x, double alpha,
                     BallResolution res = BallResolution::Standard);

// max over test points of |L_a(-c_a (1-|.|^2)^{-a})(x) - 1|
double verify_inverse_formula(Dimension n, StabilityIndex alpha,
                              const std::vector<double>& test_radii,
                              BallResolution res = BallResolution::Standard);

struct LeadingProfile {
    BallFunction profile; // (1-|x|^2)^{-a}, normalized to 1 at the origin
    double scale;         // -|M| eps^{-n} / W(n, a)
};

// Leading-order term of the capture density in rescaled ball coordinates.
LeadingProfile leading_f_profile(Dimension n, StabilityIndex alpha, double volume, double eps);

// eps^{2a-n} |M| C(n,-a) / (c_a W(n,a)); equals eps^{2a-n} |M| c(n,a) by the
// consistency identity.
double leading_capture_constant(Dimension n, StabilityIndex alpha, double volume, double eps);

} // namespace levylab
