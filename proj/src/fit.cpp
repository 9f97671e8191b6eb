#include "levylab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace levylab {

FitResult fit_scaling(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_scaling: need at least 3 points");
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [e, v] : points) {
        if (!(e > 0.0) || !(v > 0.0))
            throw std::invalid_argument("fit_scaling: eps and value must be positive");
        sx += std::log(e);
        sy += std::log(v);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [e, v] : points) {
        const double dx = std::log(e) - mx, dy = std::log(v) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_scaling: eps values are all equal");
    FitResult f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

} // namespace levylab
