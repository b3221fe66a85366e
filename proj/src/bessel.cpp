// bessel.cpp
#include "charfun/bessel.hpp"

#include <cmath>
#include <numbers>

namespace charfun {

namespace {

constexpr double kSwitch = 12.0; // series below, asymptotic above

// Ascending series around 0. At x = 12 the largest term is ~4e3, so the
// alternating cancellation costs ~4 digits; fine against the asymptotic
// branch accuracy at the switchover.
double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double j1_series(double x) {
    const double q = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Hankel expansion: J_nu(x) = sqrt(2/(pi x)) (cos(w) P - sin(w) Q),
// w = x - (2 nu + 1) pi/4, with t_k = t_{k-1} (mu - (2k-1)^2) / (8 k x),
// mu = 4 nu^2; P sums even k with alternating sign, Q odd k.
double j_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double t = 1.0, p = 1.0, q = 0.0, prev = 1.0;
    for (int k = 1; k <= 12; ++k) {
        t *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        if (std::abs(t) > prev) break; // divergent tail of the asymptotic series
        prev = std::abs(t);
        const int phase = k / 2;
        const double signed_t = (phase % 2 == 0) ? t : -t;
        if (k % 2 == 0) p += signed_t;
        else q += signed_t;
    }
    const double w = x - (2 * nu + 1) * std::numbers::pi / 4.0;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (std::cos(w) * p - std::sin(w) * q);
}

} // namespace

double bessel_j0(double x) {
    const double ax = std::abs(x);
    return ax < kSwitch ? j0_series(ax) : j_asymptotic(0, ax);
}

double bessel_j1(double x) {
    const double ax = std::abs(x);
    const double v = ax < kSwitch ? j1_series(ax) : j_asymptotic(1, ax);
    return x < 0 ? -v : v;
}

double disk_indicator_transform(double radius, double xi_norm) {
    if (xi_norm == 0.0) return std::numbers::pi * radius * radius;
    return radius * bessel_j1(2.0 * std::numbers::pi * radius * xi_norm) / xi_norm;
}

} // namespace charfun
