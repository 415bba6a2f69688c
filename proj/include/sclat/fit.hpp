#pragma once

#include <span>

namespace sclat {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least-squares line y ≈ slope·x + intercept; throws BadParameter on fewer than two points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit log y against log x; the slope is the order of y ~ x^order. Points with y ≤ 0 are dropped.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

} // namespace sclat
