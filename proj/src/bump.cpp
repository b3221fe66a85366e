// bump.cpp
#include "charfun/bump.hpp"

#include <cmath>
#include <numbers>

#include "charfun/bessel.hpp"
#include "charfun/errors.hpp"
#include "charfun/io.hpp"

namespace charfun {

namespace {

// 16-point Gauss-Legendre on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLx[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGLw[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

double bump_unscaled(double rho) {
    const double t = 2.0 * rho;
    if (t * t >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

// Composite GL over [0, 1/2] of f(rho).
template <class F>
double integrate_panels(int panels, F&& f) {
    const double width = 0.5 / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width, half = 0.5 * width;
        double local = 0.0;
        for (int g = 0; g < kGL; ++g) local += kGLw[g] * f(mid + half * kGLx[g]);
        acc += local * half;
    }
    return acc;
}

double hankel_node(double r, double c, int panels) {
    return 2.0 * std::numbers::pi *
           integrate_panels(panels, [&](double rho) { return c * bump_unscaled(rho) * bessel_j0(2.0 * std::numbers::pi * r * rho) * rho; });
}

// Catmull-Rom on a uniform table, clamped ends.
double cubic_uniform(const std::vector<double>& v, double idx) {
    const auto m = static_cast<std::ptrdiff_t>(v.size());
    auto i = static_cast<std::ptrdiff_t>(std::floor(idx));
    i = std::max<std::ptrdiff_t>(0, std::min(i, m - 2));
    const double t = idx - static_cast<double>(i);
    const double p0 = v[static_cast<std::size_t>(std::max<std::ptrdiff_t>(i - 1, 0))];
    const double p1 = v[static_cast<std::size_t>(i)];
    const double p2 = v[static_cast<std::size_t>(i + 1)];
    const double p3 = v[static_cast<std::size_t>(std::min(i + 2, m - 1))];
    return p1 + 0.5 * t * (p2 - p0 + t * (2 * p0 - 5 * p1 + 4 * p2 - p3 + t * (3 * (p1 - p2) + p3 - p0)));
}

} // namespace

double RadialProfile::operator()(double r) const {
    if (r < 0.0) r = -r;
    if (r >= r_max) return 0.0;
    if (r <= r_lin) {
        const double step = r_lin / static_cast<double>(lin_r.size() - 1);
        const double idx = r / step;
        if (r < 1.0) {
            const auto i = static_cast<std::size_t>(std::min(idx, static_cast<double>(lin_r.size() - 2)));
            const double t = idx - static_cast<double>(i);
            return lin_v[i] * (1.0 - t) + lin_v[i + 1] * t;
        }
        return cubic_uniform(lin_v, idx);
    }
    const double t0 = geo_t.front(), dt = geo_t[1] - geo_t[0];
    return cubic_uniform(geo_v, (std::log2(r) - t0) / dt);
}

std::string RadialProfile::csv() const {
    std::string out = "r,value\n";
    for (std::size_t i = 0; i < lin_r.size(); ++i) out += format_double(lin_r[i]) + "," + format_double(lin_v[i]) + "\n";
    for (std::size_t i = 0; i < geo_t.size(); ++i)
        out += format_double(std::exp2(geo_t[i])) + "," + format_double(geo_v[i]) + "\n";
    return out;
}

double Psi0Hat::operator()(double r) const {
    if (r < 0.0) r = -r;
    if (r <= 2.0) {
        const double r2 = r * r;
        double acc = 0.0;
        for (std::size_t m = series_coeff_.size(); m-- > 0;) acc = acc * r2 + series_coeff_[m];
        return acc;
    }
    return profile_(r);
}

Psi0Hat tabulate_psi0_hat(const BumpSpec& spec, double r_max, int nodes_hint) {
    if (r_max < 0.0) r_max = spec.r_max;
    if (nodes_hint < 0) nodes_hint = spec.nodes_hint;
    if (r_max < 64.0) throw ConfigError("tabulate_psi0_hat: r_max must be >= 64");
    if (nodes_hint < 256) throw ConfigError("tabulate_psi0_hat: nodes_hint must be >= 256");

    Psi0Hat out;

    // Normalization: integral psi_0 = 2 pi int rho psi drho = 1.
    const double raw = 2.0 * std::numbers::pi * integrate_panels(64, [](double rho) { return bump_unscaled(rho) * rho; });
    out.norm_constant_ = 1.0 / raw;
    const double c = out.norm_constant_;

    // Taylor coefficients a_m = (-1)^m pi^{2m} mu_m / (m!)^2 from the radial
    // moments mu_m = 2 pi int psi_0 rho^{2m+1} drho; smooth integrands, so a
    // fixed composite rule is already at machine precision.
    const int kMoments = 48;
    out.series_coeff_.resize(kMoments);
    for (int m = 0; m < kMoments; ++m) {
        const double mu = 2.0 * std::numbers::pi *
                          integrate_panels(64, [&](double rho) { return c * bump_unscaled(rho) * std::pow(rho, 2 * m + 1); });
        double fact = 1.0;
        for (int k = 1; k <= m; ++k) fact *= k;
        out.series_coeff_[static_cast<std::size_t>(m)] =
            ((m % 2 == 0) ? 1.0 : -1.0) * std::pow(std::numbers::pi, 2 * m) * mu / (fact * fact);
    }

    // Hybrid node layout: uniform on [0, 16], log-uniform on [16, r_max].
    RadialProfile& prof = out.profile_;
    prof.r_lin = 16.0;
    prof.r_max = r_max;
    const int lin_nodes = nodes_hint / 2 + 1;
    const int geo_nodes = nodes_hint / 2 + 1;

    const auto tabulate = [&](double r, int extra) {
        const int panels = std::max(8, static_cast<int>(std::ceil(r))) * extra;
        return hankel_node(r, c, panels);
    };

    double worst_err = 0.0, worst_r = 0.0;
    const auto certified = [&](double r) {
        const double v1 = tabulate(r, 1);
        const double v2 = tabulate(r, 2);
        const double err = std::abs(v1 - v2);
        if (err > worst_err) {
            worst_err = err;
            worst_r = r;
        }
        return v2;
    };

    for (int i = 0; i < lin_nodes; ++i) {
        const double r = prof.r_lin * i / (lin_nodes - 1);
        prof.lin_r.push_back(r);
        prof.lin_v.push_back(certified(r));
    }
    const double t_lo = std::log2(prof.r_lin), t_hi = std::log2(r_max);
    for (int i = 0; i < geo_nodes; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (geo_nodes - 1);
        prof.geo_t.push_back(t);
        prof.geo_v.push_back(certified(std::exp2(t)));
    }
    if (worst_err > 1e-9)
        throw CheckFailure("tabulate_psi0_hat: quadrature did not converge, error " + format_double(worst_err) +
                           " at r = " + format_double(worst_r));

    // The true tail is superpolynomially below the quadrature noise floor;
    // clamp so ratio tests see clean zeros instead of roundoff wiggle.
    for (auto& v : prof.lin_v)
        if (std::abs(v) < 1e-14) v = 0.0;
    for (auto& v : prof.geo_v)
        if (std::abs(v) < 1e-14) v = 0.0;

    return out;
}

} // namespace charfun
