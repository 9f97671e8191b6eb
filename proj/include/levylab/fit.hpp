#pragma once

#include <utility>
#include <vector>

namespace levylab {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0; // of log(value) against log(eps)
    double r_squared = 0.0;
};

// Ordinary least squares on (log eps, log value); values must be positive.
FitResult fit_scaling(const std::vector<std::pair<double, double>>& points);

} // namespace levylab
