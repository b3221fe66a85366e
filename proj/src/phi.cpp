// phi.cpp
#include "charfun/phi.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "charfun/errors.hpp"
#include "charfun/io.hpp"

namespace charfun {

namespace {

double pow_int(double base, int e) {
    double acc = 1.0;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

} // namespace

PhiFunction::PhiFunction(std::shared_ptr<const Psi0Hat> psi0hat, int moment_order)
    : psi0hat_(std::move(psi0hat)), moment_order_(moment_order), scale_(std::ldexp(1.0, -moment_order)) {}

double PhiFunction::g(double r) const {
    const double u = scale_ * std::abs(r);
    const double base = (*psi0hat_)(u) - (*psi0hat_)(2.0 * u);
    return pow_int(base, 1 << moment_order_);
}

double PhiFunction::g2(double r) const {
    const double v = g(r);
    return v * v;
}

double PhiFunction::g4(double r) const {
    const double v = g2(r);
    return v * v;
}

double PhiFunction::quartic_sum(double r) const {
    r = std::abs(r);
    if (r == 0.0) return 0.0;
    const double arg_max = std::ldexp(psi0hat_->profile().r_max, moment_order_);
    double acc = 0.0;
    // Arguments 2^{-j} r walk down (j > 0) until the small-argument terms die
    // and up (j <= 0) until past the evaluator support.
    for (double a = r; a <= arg_max; a *= 2.0) acc += g4(a);
    for (double a = 0.5 * r; a > 1e-60; a *= 0.5) {
        const double t = g4(a);
        acc += t;
        if (a < 0.05 && t < 1e-30 * acc) break;
    }
    return acc;
}

PartitionConstants certify_partition(const PhiFunction& phi, double r_lo, int samples) {
    PartitionConstants c;
    c.c1 = c.c1_quartic = 1e300;
    const int kHalfRange = 60;
    for (int i = 0; i <= samples; ++i) {
        const double r = r_lo * std::exp2(static_cast<double>(i) / samples);
        double s2 = 0.0, s4 = 0.0;
        for (int k = -kHalfRange; k <= kHalfRange; ++k) {
            const double a = std::ldexp(r, -k);
            const double t = phi.g2(a);
            s2 += t;
            s4 += t * t;
        }
        // Boundary terms of the truncated k-sum must be negligible.
        if (phi.g2(std::ldexp(r, kHalfRange)) > 1e-10 || phi.g2(std::ldexp(r, -kHalfRange)) > 1e-10)
            throw CheckFailure("certify_partition: truncation range too small");
        c.c1 = std::min(c.c1, s2);
        c.c2 = std::max(c.c2, s2);
        c.c1_quartic = std::min(c.c1_quartic, s4);
        c.c2_quartic = std::max(c.c2_quartic, s4);
    }
    if (c.c1 <= 1e-12 || c.c1_quartic <= 1e-12)
        throw CheckFailure("certify_partition: lower bound degenerate (C1 = " + format_double(c.c1) +
                           ", quartic " + format_double(c.c1_quartic) + ")");
    return c;
}

PhiFunction build_phi(int moment_order, std::shared_ptr<const Psi0Hat> psi0hat) {
    if (moment_order < 0 || moment_order > 4)
        throw ConfigError("build_phi: moment order must lie in [0, 4] (phi^{2^N} flattens below double "
                          "precision beyond)");
    if (!psi0hat) psi0hat = std::make_shared<Psi0Hat>(tabulate_psi0_hat());
    PhiFunction phi(std::move(psi0hat), moment_order);
    try {
        phi.constants_ = certify_partition(phi);
    } catch (const CheckFailure& e) {
        throw CheckFailure(std::string(e.what()) + "; try a larger r_max or a smaller moment order");
    }
    return phi;
}

namespace {

// Central difference coefficients for order m: (-1)^{m-j} C(m,j) at offsets
// (j - m/2) tau, j = 0..m.
std::vector<double> central_coeffs(int m) {
    std::vector<double> c(static_cast<std::size_t>(m) + 1);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
        if (j > 0) binom = binom * (m - j + 1) / j;
        c[static_cast<std::size_t>(j)] = ((m - j) % 2 == 0 ? 1.0 : -1.0) * binom;
    }
    return c;
}

} // namespace

std::vector<MomentEntry> moment_check(const PhiFunction& phi, int beta_max) {
    if (beta_max >= (1 << phi.moment_order()))
        throw ConfigError("moment_check: beta_max must be < 2^N");
    const double tau = 1e-2;
    std::vector<MomentEntry> table;
    for (int b1 = 0; b1 <= beta_max; ++b1)
        for (int b2 = 0; b1 + b2 <= beta_max; ++b2) {
            const auto cx = central_coeffs(b1), cy = central_coeffs(b2);
            double acc = 0.0;
            for (int i = 0; i <= b1; ++i)
                for (int j = 0; j <= b2; ++j) {
                    const double x = (i - 0.5 * b1) * tau;
                    const double y = (j - 0.5 * b2) * tau;
                    acc += cx[static_cast<std::size_t>(i)] * cy[static_cast<std::size_t>(j)] * phi.g(std::hypot(x, y));
                }
            const double deriv = acc / std::pow(tau, b1 + b2);
            const double twopi = 2.0 * std::numbers::pi;
            table.push_back({b1, b2, std::abs(deriv) / std::pow(twopi, b1 + b2)});
        }
    return table;
}

double Multiplier::operator()(double r) const {
    r = std::abs(r);
    switch (kind) {
        case Kind::direct:
            return std::exp2(k * s) * phi->g2(r * std::ldexp(1.0, -k)) * std::pow(1.0 + r * r, -0.5 * s);
        case Kind::dual: {
            if (r == 0.0) return 0.0;
            const double piece = phi->g2(r * std::ldexp(1.0, -k));
            if (piece == 0.0) return 0.0;
            return std::exp2(-k * s) * piece * std::pow(1.0 + r * r, 0.5 * s) / phi->quartic_sum(r);
        }
        case Kind::dual_low: {
            if (r == 0.0) return 0.0;
            return 1.0 / phi->quartic_sum(r);
        }
    }
    return 0.0;
}

Multiplier multiplier_m(const PhiFunction& phi, int k, double s) {
    return Multiplier{&phi, k, s, Multiplier::Kind::direct};
}

Multiplier multiplier_m_prime(const PhiFunction& phi, int k, double s) {
    return Multiplier{&phi, k, s, Multiplier::Kind::dual};
}

Multiplier multiplier_m0_prime(const PhiFunction& phi) {
    return Multiplier{&phi, 0, 0.0, Multiplier::Kind::dual_low};
}

double low_pass_symbol(const PhiFunction& phi, double s, double r) {
    r = std::abs(r);
    if (r == 0.0) return 0.0; // g vanishes at the origin faster than any power
    double acc = 0.0;
    const double arg_max = std::ldexp(phi.psi0hat().profile().r_max, phi.moment_order());
    for (double a = r; a <= arg_max; a *= 2.0) { // k = 0, -1, -2, ...
        const double t = phi.g4(a);
        acc += t;
        if (t < 1e-12 && a > 4.0) break;
    }
    return std::pow(1.0 + r * r, 0.5 * s) * acc;
}

MikhlinReport mikhlin_check(const PhiFunction& phi, double s, int patterns, std::uint64_t seed, int octave_lo,
                            int octave_hi) {
    constexpr int kTerms = 20;
    constexpr int kRadiiPerOctave = 4;
    MikhlinReport report;
    report.patterns = patterns;
    for (int o = octave_lo; o <= octave_hi; ++o) report.octaves.push_back(o);

    const int n_oct = octave_hi - octave_lo + 1;
    // alpha classes: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2)
    const int alphas[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    for (int dual = 0; dual < 2; ++dual)
        for (const auto& a : alphas) {
            MikhlinReport::Row row;
            row.dual = dual == 1;
            row.b1 = a[0];
            row.b2 = a[1];
            row.octave_max.assign(static_cast<std::size_t>(n_oct), 0.0);
            report.rows.push_back(row);
        }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int pat = 0; pat < patterns; ++pat) {
        double omega[kTerms];
        for (double& w : omega) w = coin(rng) ? 1.0 : -1.0;

        for (int dual = 0; dual < 2; ++dual) {
            const auto G = [&](double r) {
                // The dual family shares one quartic sum at r across all k.
                const double qs = dual ? phi.quartic_sum(r) : 1.0;
                const double bessel_weight = std::pow(1.0 + r * r, dual ? 0.5 * s : -0.5 * s);
                double acc = 0.0;
                for (int k = 1; k <= kTerms; ++k) {
                    const double piece = phi.g2(std::ldexp(r, -k));
                    if (piece == 0.0) continue;
                    acc += omega[k - 1] * std::exp2((dual ? -k : k) * s) * piece * bessel_weight / qs;
                }
                return acc;
            };

            for (int oi = 0; oi < n_oct; ++oi) {
                for (int ri = 0; ri < kRadiiPerOctave; ++ri) {
                    const double r =
                        std::exp2(static_cast<double>(octave_lo + oi) + (ri + 0.5) / kRadiiPerOctave);
                    const double tau = 1e-3 * r;
                    const double gm = G(r - tau), g0 = G(r), gp = G(r + tau);
                    const double d1 = (gp - gm) / (2.0 * tau);
                    const double d2 = (gp - 2.0 * g0 + gm) / (tau * tau);
                    // Radial chain rule maxima over direction: |d^alpha F| for
                    // F(xi) = G(|xi|).
                    const double vals[6] = {std::abs(g0),
                                            std::abs(d1),
                                            std::abs(d1),
                                            std::max(std::abs(d2), std::abs(d1) / r),
                                            0.5 * std::abs(d2 - d1 / r),
                                            std::max(std::abs(d2), std::abs(d1) / r)};
                    for (int ai = 0; ai < 6; ++ai) {
                        const int ord = alphas[ai][0] + alphas[ai][1];
                        auto& row = report.rows[static_cast<std::size_t>(dual * 6 + ai)];
                        auto& cell = row.octave_max[static_cast<std::size_t>(oi)];
                        cell = std::max(cell, std::pow(r, ord) * vals[ai]);
                    }
                }
            }
        }
    }

    for (auto& row : report.rows) {
        double lo = 1e300, hi = 0.0;
        for (double v : row.octave_max) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        row.spread = lo > 0.0 ? hi / lo : 1e300;
        // Certification fails only on a clear growth trend across octaves.
        bool growing = true;
        for (std::size_t i = 1; i < row.octave_max.size(); ++i)
            if (row.octave_max[i] <= row.octave_max[i - 1] * 1.2) growing = false;
        if (growing && row.spread > 16.0)
            throw CheckFailure("mikhlin_check: unbounded growth trend across octaves (alpha = (" +
                               std::to_string(row.b1) + "," + std::to_string(row.b2) + "))");
    }
    return report;
}

} // namespace charfun
