// boundary.cpp
#include "charfun/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "charfun/errors.hpp"
#include "charfun/io.hpp"

namespace charfun {

namespace {

// Counting rule shared by the public op and the coarse profile blocks.
// Distance per cell: the average of the two exact EDT flavors -- the
// center-to-center distance overshoots dist(., dE) and the region distance
// undershoots it (staircase near-envelope), by the same half-cell-scale
// amounts on ideal interfaces. Each cell then contributes its linear overlap
// with the band (the distance field has unit gradient, so a cell spans an
// h-wide distance interval around its center value). Bands wider than L/8
// clip at the box and just saturate.
double banded_volume(const DistanceMap& map, double delta) {
    const double h = map.spec.spacing();
    double count = 0.0;
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const double d = 0.5 * (map.values[i] + map.interface_values[i]);
        count += std::clamp(0.5 + (delta - d) / h, 0.0, 1.0);
    }
    return map.spec.cell_measure() * count;
}

} // namespace

double neighborhood_volume(const DistanceMap& map, double delta) {
    const double h = map.spec.spacing();
    const double L = map.spec.box_length;
    if (!(delta >= 2.0 * h) || !(delta <= L / 8.0))
        throw ConfigError("neighborhood_volume: delta must lie in [2h, L/8], got " + format_double(delta));
    return banded_volume(map, delta);
}

BoundaryProfile boundary_profile(const DistanceMap& map, int fit_i_min, int fit_i_max) {
    const int n = map.spec.n;
    const int finest = static_cast<int>(std::round(std::log2(static_cast<double>(n)))) - 1;
    if (fit_i_max < 0) fit_i_max = finest;
    if (fit_i_min < 3) throw ConfigError("boundary_profile: fit window must start at i >= 3 (delta <= L/8)");
    if (fit_i_max > finest) throw ConfigError("boundary_profile: fit window beyond resolvable scale (delta < 2h)");
    if (fit_i_max < fit_i_min) throw ConfigError("boundary_profile: empty fit window");

    // Blocks down from delta = L so the dyadic integrals span [delta_min, 1];
    // the coarse blocks (i < 3) saturate and never enter gamma fits.
    BoundaryProfile prof;
    prof.dim = map.spec.dim;
    for (int i = 0; i <= finest; ++i) {
        const double delta = std::ldexp(map.spec.box_length, -i);
        prof.i_index.push_back(i);
        prof.delta.push_back(delta);
        prof.volume.push_back(banded_volume(map, delta));
    }
    prof.fit_i_min = fit_i_min;
    prof.fit_i_max = fit_i_max;
    const GammaFit fit = fit_gamma(prof, fit_i_min, fit_i_max);
    prof.gamma_hat = fit.gamma_hat;
    prof.gamma_stderr = fit.stderr;
    return prof;
}

double profile_volume_at(const BoundaryProfile& profile, int i) {
    for (std::size_t k = 0; k < profile.i_index.size(); ++k)
        if (profile.i_index[k] == i) return profile.volume[k];
    throw ConfigError("boundary profile: no block at i = " + std::to_string(i));
}

GammaFit fit_gamma(const BoundaryProfile& profile, int i_lo, int i_hi) {
    std::vector<double> x, y;
    for (std::size_t k = 0; k < profile.i_index.size(); ++k) {
        if (profile.i_index[k] < i_lo || profile.i_index[k] > i_hi) continue;
        x.push_back(std::log2(profile.delta[k]));
        y.push_back(std::log2(profile.volume[k]));
    }
    if (x.size() < 4) throw ConfigError("fit_gamma: need >= 4 profile points in the window");
    GammaFit g;
    g.line = fit_line(x, y);
    g.gamma_hat = profile.dim - g.line.slope;
    g.stderr = g.line.slope_stderr;
    return g;
}

namespace {

DyadicIntegral dyadic_quadrature(const BoundaryProfile& profile, double delta_min,
                                 const std::function<double(double, double)>& term_of) {
    DyadicIntegral out;
    for (std::size_t k = 0; k < profile.delta.size(); ++k) {
        const double d = profile.delta[k];
        if (d < delta_min || d > 1.0) continue;
        out.blocks.emplace_back(d, term_of(d, profile.volume[k]));
    }
    if (out.blocks.empty()) throw ConfigError("dyadic quadrature: no profile points above delta_min");
    for (const auto& [d, t] : out.blocks) out.value += t * std::numbers::ln2;

    // Blocks are ordered by descending delta; the trend looks at the last
    // few toward delta_min.
    const std::size_t m = out.blocks.size();
    const std::size_t tail = std::min<std::size_t>(m - 1, 4);
    if (tail >= 1) {
        double acc = 0.0;
        for (std::size_t j = m - tail; j < m; ++j)
            acc += std::log2(out.blocks[j].second / out.blocks[j - 1].second);
        out.divergent_trend = acc / static_cast<double>(tail) >= -0.05;
    }
    return out;
}

} // namespace

DyadicIntegral sickel_integral(const BoundaryProfile& profile, double q, double s, double delta_min) {
    if (!(q >= 1.0) || !(s > 0.0) || !(s < 1.0)) throw ConfigError("sickel_integral: need q >= 1 and s in (0,1)");
    return dyadic_quadrature(profile, delta_min,
                             [&](double d, double vol) { return std::pow(d, -q * s) * vol; });
}

DyadicIntegral fchar_integral(const BoundaryProfile& profile, double p, double delta_min) {
    if (!(p >= 1.0) || !(p <= 2.0)) throw ConfigError("fchar_integral: need p in [1,2]");
    const double dim = profile.dim;
    DyadicIntegral out = dyadic_quadrature(profile, delta_min, [&](double d, double vol) {
        return std::pow(d, -dim * (1.0 - p / 2.0)) * std::pow(vol, p / 2.0);
    });
    out.value = std::pow(out.value, 1.0 / p);
    return out;
}

LsqIntegrals lsq_integrals(const BoundaryProfile& profile, double q, double s, double delta_min) {
    if (!(q >= 1.0) || !(s > 0.0)) throw ConfigError("lsq_integrals: need q >= 1 and s > 0");
    LsqIntegrals out;
    out.high = dyadic_quadrature(profile, delta_min,
                                 [&](double d, double vol) { return std::pow(d, -2.0 * s) * std::pow(vol, 2.0 / q); });
    out.high.value = std::sqrt(out.high.value);
    out.low = dyadic_quadrature(profile, delta_min,
                                [&](double d, double vol) { return std::pow(d, -q * s) * vol; });
    out.low.value = std::pow(out.low.value, 1.0 / q);
    return out;
}

std::string boundary_profile_csv(const BoundaryProfile& profile) {
    std::string out = "delta,volume,log2_delta,log2_volume\n";
    for (std::size_t k = 0; k < profile.delta.size(); ++k) {
        out += format_double(profile.delta[k]) + "," + format_double(profile.volume[k]) + "," +
               format_double(std::log2(profile.delta[k])) + "," + format_double(std::log2(profile.volume[k])) + "\n";
    }
    return out;
}

} // namespace charfun
