// littlewood_paley.hpp -- dyadic frequency projections P_k and the low piece,
// square functions, and the numerical checks of the refined inequality and
// the boundary-packet bounds.
#pragma once

#include <optional>
#include <vector>

#include "charfun/boundary.hpp"
#include "charfun/fft.hpp"
#include "charfun/grid.hpp"
#include "charfun/norms.hpp"
#include "charfun/phi.hpp"
#include "charfun/reports.hpp"

namespace charfun {

// Largest projection index under the half-Nyquist policy 2^k <= n/(4L).
int max_projection_index(const GridSpec& spec);

// Pointwise multiplication of a spectrum by a radial symbol w(|xi|).
template <class W>
Spectrum apply_radial_multiplier(const Spectrum& s, W&& w, Exec exec = Exec::parallel) {
    Spectrum out = make_spectrum(s.spec);
    for_each_index(s.spec.cell_count(), exec, [&](std::int64_t i) {
        out.values[static_cast<std::size_t>(i)] =
            s.values[static_cast<std::size_t>(i)] * w(frequency_radius(s.spec, i));
    });
    return out;
}

// Bessel-potential lift: f_s with hat{f_s} = (1+|xi|^2)^{s/2} hat{f}.
Spectrum bessel_lift(const Spectrum& fhat, double s, Exec exec = Exec::parallel);

// P_k f = (g^2(2^{-k} xi) hat f)^v; k beyond half-Nyquist is refused.
ScalarField project_k(const Spectrum& fhat, const PhiFunction& phi, int k, Exec exec = Exec::parallel);
ScalarField project_k(const ScalarField& f, const PhiFunction& phi, int k, Exec exec = Exec::parallel);

// P_{<=0} f = (Phi_0 hat f)^v with Phi_0 = (1+|xi|^2)^{s/2} sum_{k<=0} g^4.
ScalarField project_low(const Spectrum& fhat, const PhiFunction& phi, double s, Exec exec = Exec::parallel);
ScalarField project_low(const ScalarField& f, const PhiFunction& phi, double s, Exec exec = Exec::parallel);

struct LPDecomposition {
    double s = 0.0;
    int k_min = 1, k_max = 0;
    std::vector<ScalarField> pieces; // P_k f, k = k_min..k_max
    ScalarField low;                 // P_{<=0} f
    Spectrum source;                 // hat f
};

LPDecomposition decompose(const ScalarField& f, const PhiFunction& phi, double s, Exec exec = Exec::parallel);

// Pointwise (sum_k (2^{ks} |P_k f|)^2)^{1/2} over the held pieces.
ScalarField square_function(const LPDecomposition& decomp);

// Spectral re-synthesis m_0' Phi_0 hat f + sum_k 2^{ks} m_k' hat{P_k f};
// equals hat{f_s} wherever the quartic sum is positive (everything but the
// zero frequency), which the decomposition invariant tests exercise.
Spectrum lp_reconstruct(const Spectrum& fhat, const PhiFunction& phi, double s, int k_max,
                        Exec exec = Exec::parallel);

// Boundary-packet table: per k the physical p-norms of the odd piece
// (g(2^{-k} xi) hat chi)^v and of P_k chi against |(dE)_{2^{-k}}|^{1/p} and
// |(dE)_{2^{-k+1}}|^{1/p} from the boundary profile. k outside the resolvable
// band is trimmed with a note in the report.
DyadicReport verify_packet(const ScalarField& indicator, const PhiFunction& phi, double p, int k_lo, int k_hi,
                           const BoundaryProfile& profile, Exec exec = Exec::parallel);

// The smooth 18-member family used for the two-sided inequality check:
// 6 Gaussian widths, 6 modulation carriers, 6 raised-cosine radii.
std::vector<ScalarField> smooth_test_family(const GridSpec& spec);

struct LpInequalityReport {
    double q = 0.0, r = 0.0, s = 0.0;
    std::vector<double> lhs, rhs, ratio; // per family member
    double ratio_min = 0.0, ratio_max = 0.0;
    nlohmann::ordered_json json() const;
};

// Both sides of the refined Littlewood-Paley inequality on a test family:
// LHS = ||f_s||_{q,r}, RHS = ||P_{<=0} f||_{q,r} + ||S f||_{q,r}. Constants
// are unspecified by the theory; the report records the empirical ratio range.
LpInequalityReport verify_lp_inequality(const std::vector<ScalarField>& family, const PhiFunction& phi, double s,
                                        double q, double r, Exec exec = Exec::parallel);

} // namespace charfun
