// norms.cpp
#include "charfun/norms.hpp"

#include <algorithm>
#include <cmath>

#include "charfun/errors.hpp"

namespace charfun {

namespace {

// Quadrature sum of |v|^p over an optional radial region, combined row-wise
// in fixed order (deterministic under both Exec paths).
template <class Samples, class RadiusOf>
double lp_impl(const Samples& vals, const GridSpec& spec, double mu, double p, const std::optional<Annulus>& region,
               RadiusOf&& radius_of, Exec exec) {
    if (!(p >= 1.0)) throw ConfigError("lp_norm: p must be >= 1 (use lorentz_quasinorm for quasinorm exponents)");
    const std::int64_t count = spec.cell_count();
    const std::int64_t rows = spec.n;
    const std::int64_t row_len = count / rows;

    if (std::isinf(p)) {
        return max_over(rows, exec, [&](std::int64_t r) {
            double m = 0.0;
            for (std::int64_t j = r * row_len; j < (r + 1) * row_len; ++j) {
                if (region && !region->contains(radius_of(j))) continue;
                const double a = std::abs(vals[static_cast<std::size_t>(j)]);
                m = a > m ? a : m;
            }
            return m;
        });
    }

    const double total = sum_over(rows, exec, [&](std::int64_t r) {
        double acc = 0.0;
        for (std::int64_t j = r * row_len; j < (r + 1) * row_len; ++j) {
            if (region && !region->contains(radius_of(j))) continue;
            acc += std::pow(std::abs(vals[static_cast<std::size_t>(j)]), p);
        }
        return acc;
    });
    return std::pow(mu * total, 1.0 / p);
}

template <class Samples, class RadiusOf>
DistributionFunction distribution_impl(const Samples& vals, const GridSpec& spec, double mu,
                                       const std::optional<Annulus>& region, RadiusOf&& radius_of) {
    DistributionFunction d;
    d.cell_measure = mu;
    d.magnitudes.reserve(vals.size());
    for (std::int64_t j = 0; j < spec.cell_count(); ++j) {
        if (region && !region->contains(radius_of(j))) continue;
        d.magnitudes.push_back(std::abs(vals[static_cast<std::size_t>(j)]));
    }
    std::sort(d.magnitudes.begin(), d.magnitudes.end());
    return d;
}

} // namespace

double lp_norm(const ScalarField& f, double p, std::optional<Annulus> region, Exec exec) {
    return lp_impl(f.values, f.spec, f.spec.cell_measure(), p, region,
                   [&](std::int64_t j) { return lattice_radius(f.spec, j); }, exec);
}

double lp_norm(const Spectrum& s, double p, std::optional<Annulus> region, Exec exec) {
    return lp_impl(s.values, s.spec, s.spec.freq_cell_measure(), p, region,
                   [&](std::int64_t j) { return frequency_radius(s.spec, j); }, exec);
}

double DistributionFunction::operator()(double lambda) const {
    if (lambda < 0.0) return total_measure();
    const auto it = std::upper_bound(magnitudes.begin(), magnitudes.end(), lambda);
    return cell_measure * static_cast<double>(magnitudes.end() - it);
}

DistributionFunction distribution(const ScalarField& f, std::optional<Annulus> region) {
    return distribution_impl(f.values, f.spec, f.spec.cell_measure(), region,
                             [&](std::int64_t j) { return lattice_radius(f.spec, j); });
}

DistributionFunction distribution(const Spectrum& s, std::optional<Annulus> region) {
    return distribution_impl(s.values, s.spec, s.spec.freq_cell_measure(), region,
                             [&](std::int64_t j) { return frequency_radius(s.spec, j); });
}

double lorentz_quasinorm(const DistributionFunction& d, double q, double r) {
    if (!(q > 0.0)) throw ConfigError("lorentz_quasinorm: q must be positive");
    if (!(r == kInf || r >= 1.0)) throw ConfigError("lorentz_quasinorm: r must be infinity or >= 1");
    const auto& mags = d.magnitudes;
    const std::size_t m = mags.size();
    const double mu = d.cell_measure;
    if (m == 0) return 0.0;

    if (std::isinf(r)) {
        // Rearrangement form: sup_k ((k+1) mu)^{1/q} w_k with w descending;
        // equals the sup over the lambda grid of distinct magnitudes.
        double best = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double w = mags[m - 1 - k];
            if (w == 0.0) break;
            const double v = std::pow(static_cast<double>(k + 1) * mu, 1.0 / q) * w;
            best = v > best ? v : best;
        }
        return best;
    }

    // f* is w_k on [k mu, (k+1) mu); integrate (t^{1/q} f*)^r dt/t exactly.
    double acc = 0.0;
    const double e = r / q;
    for (std::size_t k = 0; k < m; ++k) {
        const double w = mags[m - 1 - k];
        if (w == 0.0) break;
        const double t0 = static_cast<double>(k) * mu, t1 = static_cast<double>(k + 1) * mu;
        acc += std::pow(w, r) * (std::pow(t1, e) - std::pow(t0, e)) / e;
    }
    return std::pow(acc, 1.0 / r);
}

double lorentz_quasinorm(const ScalarField& f, double q, double r, std::optional<Annulus> region) {
    return lorentz_quasinorm(distribution(f, region), q, r);
}

double lorentz_quasinorm(const Spectrum& s, double q, double r, std::optional<Annulus> region) {
    return lorentz_quasinorm(distribution(s, region), q, r);
}

} // namespace charfun
