// fit.hpp -- ordinary least squares line fit used by every log-log slope.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "charfun/errors.hpp"

namespace charfun {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    int npoints = 0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t m = x.size();
    if (m != y.size() || m < 2) throw ConfigError("fit_line: need >= 2 points of equal length");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double xbar = sx / static_cast<double>(m), ybar = sy / static_cast<double>(m);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    if (sxx == 0.0) throw ConfigError("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = ybar - f.slope * xbar;
    f.npoints = static_cast<int>(m);
    if (m > 2) {
        double ssr = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = y[i] - (f.intercept + f.slope * x[i]);
            ssr += r * r;
        }
        f.slope_stderr = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
    }
    return f;
}

} // namespace charfun
