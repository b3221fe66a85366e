// littlewood_paley.cpp
#include "charfun/littlewood_paley.hpp"

#include <cmath>
#include <numbers>

#include "charfun/errors.hpp"

namespace charfun {

int max_projection_index(const GridSpec& spec) {
    return static_cast<int>(std::floor(std::log2(spec.n / (4.0 * spec.box_length))));
}

Spectrum bessel_lift(const Spectrum& fhat, double s, Exec exec) {
    return apply_radial_multiplier(fhat, [s](double r) { return std::pow(1.0 + r * r, 0.5 * s); }, exec);
}

ScalarField project_k(const Spectrum& fhat, const PhiFunction& phi, int k, Exec exec) {
    if (k > max_projection_index(fhat.spec))
        throw ConfigError("project_k: k = " + std::to_string(k) + " beyond the half-Nyquist band (max " +
                          std::to_string(max_projection_index(fhat.spec)) + ")");
    const double inv = std::ldexp(1.0, -k);
    return inverse_transform(apply_radial_multiplier(fhat, [&](double r) { return phi.g2(r * inv); }, exec), exec);
}

ScalarField project_k(const ScalarField& f, const PhiFunction& phi, int k, Exec exec) {
    return project_k(forward_transform(f, exec), phi, k, exec);
}

ScalarField project_low(const Spectrum& fhat, const PhiFunction& phi, double s, Exec exec) {
    return inverse_transform(
        apply_radial_multiplier(fhat, [&](double r) { return low_pass_symbol(phi, s, r); }, exec), exec);
}

ScalarField project_low(const ScalarField& f, const PhiFunction& phi, double s, Exec exec) {
    return project_low(forward_transform(f, exec), phi, s, exec);
}

LPDecomposition decompose(const ScalarField& f, const PhiFunction& phi, double s, Exec exec) {
    LPDecomposition d;
    d.s = s;
    d.k_min = 1;
    d.k_max = max_projection_index(f.spec);
    if (d.k_max < d.k_min) throw ConfigError("decompose: grid too small for any dyadic piece");
    d.source = forward_transform(f, exec);
    for (int k = d.k_min; k <= d.k_max; ++k) d.pieces.push_back(project_k(d.source, phi, k, exec));
    d.low = project_low(d.source, phi, s, exec);
    return d;
}

ScalarField square_function(const LPDecomposition& decomp) {
    ScalarField out = make_field(decomp.low.spec);
    for (int k = decomp.k_min; k <= decomp.k_max; ++k) {
        const double w = std::exp2(decomp.s * k);
        const auto& piece = decomp.pieces[static_cast<std::size_t>(k - decomp.k_min)].values;
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            const double t = w * piece[i];
            out.values[i] += t * t;
        }
    }
    for (auto& v : out.values) v = std::sqrt(v);
    return out;
}

Spectrum lp_reconstruct(const Spectrum& fhat, const PhiFunction& phi, double s, int k_max, Exec exec) {
    return apply_radial_multiplier(
        fhat,
        [&](double r) {
            if (r == 0.0) return 0.0;
            double acc = multiplier_m0_prime(phi)(r) * low_pass_symbol(phi, s, r);
            for (int k = 1; k <= k_max; ++k)
                acc += std::exp2(k * s) * multiplier_m_prime(phi, k, s)(r) * phi.g2(std::ldexp(r, -k));
            return acc;
        },
        exec);
}

DyadicReport verify_packet(const ScalarField& indicator, const PhiFunction& phi, double p, int k_lo, int k_hi,
                           const BoundaryProfile& profile, Exec exec) {
    const GridSpec& spec = indicator.spec;
    const int k_proj_max = max_projection_index(spec);
    const int k_vol_max = profile.i_index.back(); // delta >= 2h
    const int lo = std::max(k_lo, 3);             // primary band at delta <= L/8
    const int hi = std::min({k_hi, k_proj_max, k_vol_max});

    DyadicReport rep;
    rep.name = "packet";
    if (lo > hi) throw ConfigError("verify_packet: no resolvable scales in the requested k range");
    if (lo != k_lo || hi != k_hi)
        rep.notes.push_back("k range trimmed to [" + std::to_string(lo) + "," + std::to_string(hi) +
                            "] (resolvable band)");

    const Spectrum fhat = forward_transform(indicator, exec);
    std::vector<double> phi_norm, pk_norm, vol_pow, vol_prev_pow, ratio_phi, ratio_pk;
    for (int k = lo; k <= hi; ++k) {
        rep.k.push_back(k);
        const double inv = std::ldexp(1.0, -k);
        const ScalarField odd =
            inverse_transform(apply_radial_multiplier(fhat, [&](double r) { return phi.g(r * inv); }, exec), exec);
        const ScalarField even =
            inverse_transform(apply_radial_multiplier(fhat, [&](double r) { return phi.g2(r * inv); }, exec), exec);
        const double a = lp_norm(odd, p, {}, exec);
        const double b = lp_norm(even, p, {}, exec);
        const double v1 = std::pow(profile_volume_at(profile, k), 1.0 / p);
        const double v2 = std::pow(profile_volume_at(profile, k - 1), 1.0 / p);
        phi_norm.push_back(a);
        pk_norm.push_back(b);
        vol_pow.push_back(v1);
        vol_prev_pow.push_back(v2);
        ratio_phi.push_back(a / v1);
        ratio_pk.push_back(b / v2);
    }
    rep.add_column("phi_piece_norm", phi_norm);
    rep.add_column("pk_norm", pk_norm);
    rep.add_column("band_volume_pow", vol_pow);
    rep.add_column("band_volume_prev_pow", vol_prev_pow);
    rep.add_column("ratio_phi", ratio_phi);
    rep.add_column("ratio_pk", ratio_pk);
    rep.fit_log2_column("phi_piece_norm");
    rep.fit_log2_column("pk_norm");
    return rep;
}

std::vector<ScalarField> smooth_test_family(const GridSpec& spec) {
    std::vector<ScalarField> family;
    const double L = spec.box_length, h = spec.spacing();
    const double cx = 0.5 * L, cy = 0.5 * L;

    const auto fill = [&](auto&& fn) {
        ScalarField f = make_field(spec);
        for (int i = 0; i < spec.n; ++i)
            for (int j = 0; j < spec.n; ++j) {
                const double x = j * h - cx, y = i * h - cy;
                f.values[static_cast<std::size_t>(i) * spec.n + j] = fn(x, y);
            }
        return f;
    };

    for (int j = 0; j < 6; ++j) {
        const double sigma = L / 16.0 * std::exp2(-0.5 * j);
        family.push_back(fill([&](double x, double y) { return std::exp(-(x * x + y * y) / (2 * sigma * sigma)); }));
    }
    for (int j = 0; j < 6; ++j) {
        const double sigma = L / 16.0;
        const double carrier = std::exp2(j + 1) / L; // 2/L .. 64/L
        family.push_back(fill([&](double x, double y) {
            return std::cos(2.0 * std::numbers::pi * carrier * x) * std::exp(-(x * x + y * y) / (2 * sigma * sigma));
        }));
    }
    for (int j = 0; j < 6; ++j) {
        const double rho = L / 4.0 * std::exp2(-0.5 * j);
        family.push_back(fill([&](double x, double y) {
            const double r = std::hypot(x, y);
            if (r >= rho) return 0.0;
            const double c = 0.5 * (1.0 + std::cos(std::numbers::pi * r / rho));
            return c * c;
        }));
    }
    return family;
}

nlohmann::ordered_json LpInequalityReport::json() const {
    nlohmann::ordered_json j;
    j["q"] = q;
    j["r"] = std::isinf(r) ? -1.0 : r;
    j["s"] = s;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["ratio"] = ratio;
    j["ratio_min"] = ratio_min;
    j["ratio_max"] = ratio_max;
    return j;
}

LpInequalityReport verify_lp_inequality(const std::vector<ScalarField>& family, const PhiFunction& phi, double s,
                                        double q, double r, Exec exec) {
    LpInequalityReport rep;
    rep.q = q;
    rep.r = r;
    rep.s = s;
    rep.ratio_min = 1e300;
    rep.ratio_max = 0.0;
    for (const auto& f : family) {
        const LPDecomposition d = decompose(f, phi, s, exec);
        const ScalarField fs = inverse_transform(bessel_lift(d.source, s, exec), exec);
        const double lhs = lorentz_quasinorm(fs, q, r);
        const double rhs = lorentz_quasinorm(d.low, q, r) + lorentz_quasinorm(square_function(d), q, r);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        if (lhs == 0.0 && rhs == 0.0) {
            rep.ratio.push_back(1.0);
            continue;
        }
        const double ratio = rhs / lhs;
        rep.ratio.push_back(ratio);
        rep.ratio_min = std::min(rep.ratio_min, ratio);
        rep.ratio_max = std::max(rep.ratio_max, ratio);
    }
    if (!(rep.ratio_min > 0.0) || !std::isfinite(rep.ratio_max))
        throw CheckFailure("verify_lp_inequality: degenerate ratio range");
    return rep;
}

} // namespace charfun
