#pragma once

// Small fitting utilities for the estimator reports.

#include <cstddef>
#include <vector>

namespace sdelab {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
};

// Least squares y ~ intercept + slope * x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Pool-adjacent-violators: best nonincreasing fit in least squares.
std::vector<double> isotonic_nonincreasing(const std::vector<double>& y);

} // namespace sdelab
