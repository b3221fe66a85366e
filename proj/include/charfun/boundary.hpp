// boundary.hpp -- delta-neighborhood volumes of the boundary, the fitted
// codimension exponent, and the dyadic boundary integrals.
#pragma once

#include <utility>
#include <vector>

#include "charfun/distance.hpp"
#include "charfun/fit.hpp"
#include "charfun/grid.hpp"

namespace charfun {

// |(dE)_delta|: band measure of the discrete boundary. Per cell the distance
// to dE is estimated as the average of the exact center-to-center and
// center-to-region EDTs (their ideal-interface biases cancel), and the cell
// contributes its linear overlap with the band -- the distance field has
// unit gradient, so a cell spans an h-wide interval of distances. Counting
// raw center distances instead loses one cell per band side. Requires
// 2h <= delta <= L/8.
double neighborhood_volume(const DistanceMap& map, double delta);

// Monotone profile delta_i = 2^{-i} L over i in [0, log2(n)-1], plus the
// exponent fitted over [fit_i_min, fit_i_max]. Blocks with i < 3 saturate
// against the box (bands clip at its edges); they feed the dyadic integrals
// up to delta = 1 but are excluded from exponent fits.
struct BoundaryProfile {
    int dim = 2;
    std::vector<int> i_index;      // ascending i, so delta descending
    std::vector<double> delta;
    std::vector<double> volume;
    double gamma_hat = 0.0;
    double gamma_stderr = 0.0;
    int fit_i_min = 0, fit_i_max = 0;
};

// fit_i_max < 0 selects the finest resolvable scale log2(n) - 1 (delta = 2h).
BoundaryProfile boundary_profile(const DistanceMap& map, int fit_i_min = 3, int fit_i_max = -1);

// Profile volume at delta = 2^{-i} L; throws if i is outside the held range.
double profile_volume_at(const BoundaryProfile& profile, int i);

struct GammaFit {
    double gamma_hat = 0.0;
    double stderr = 0.0;
    LineFit line;
};

// gamma_hat = dim - slope of log2 volume vs log2 delta over i in [i_lo, i_hi];
// needs >= 4 profile points in the window.
GammaFit fit_gamma(const BoundaryProfile& profile, int i_lo, int i_hi);

// One dyadic quadrature: value = sum_i term(delta_i) * ln 2 over
// delta_i in [delta_min, 1]. divergent_trend is raised when the blocks stop
// decaying toward delta_min (mean log2-ratio of the last blocks >= -0.05);
// a finite grid can witness non-decay, not divergence.
struct DyadicIntegral {
    double value = 0.0;
    bool divergent_trend = false;
    std::vector<std::pair<double, double>> blocks; // (delta, term)
};

// integrand delta^{-qs} |(dE)_delta| ddelta/delta  (finiteness criterion for
// the fractional Sobolev membership of chi_E).
DyadicIntegral sickel_integral(const BoundaryProfile& profile, double q, double s, double delta_min);

// integrand delta^{-d(1-p/2)} |(dE)_delta|^{p/2} ddelta/delta; returns the
// quadrature^{1/p} (the Fourier-norm bound term).
DyadicIntegral fchar_integral(const BoundaryProfile& profile, double p, double delta_min);

// The two L_s^q displays: high integrand delta^{-2s}|(dE)_delta|^{2/q}
// (returned as sqrt of the quadrature), low integrand delta^{-qs}|(dE)_delta|
// (returned as the q-th root). They coincide at q = 2.
struct LsqIntegrals {
    DyadicIntegral high;
    DyadicIntegral low;
};
LsqIntegrals lsq_integrals(const BoundaryProfile& profile, double q, double s, double delta_min);

std::string boundary_profile_csv(const BoundaryProfile& profile);

} // namespace charfun
