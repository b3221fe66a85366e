// bump.hpp -- the radial C-infinity bump psi_0 and its 2D Fourier transform,
// tabulated once and evaluated everywhere else.
#pragma once

#include <string>
#include <vector>

namespace charfun {

// psi_0(x) = c * exp(-1/(1-|2x|^2)) for |x| < 1/2, 0 outside, with c fixed by
// the normalization integral psi_0 = psihat_0(0) = 1.
struct BumpSpec {
    double r_max = 256.0;  // tabulation range of psihat_0
    int nodes_hint = 2048; // overall table density scale
};

// Tabulated radial function. Hybrid grid: uniform spacing on [0, r_lin],
// log-uniform on [r_lin, r_max]. Interpolation is linear below r = 1 and
// cubic (in r on the linear section, in log2 r on the geometric section)
// beyond; node evaluations reproduce stored values exactly.
struct RadialProfile {
    double r_lin = 0.0;
    std::vector<double> lin_r, lin_v; // uniform section including r = 0
    std::vector<double> geo_t, geo_v; // t = log2 r, uniform
    double r_max = 0.0;

    double operator()(double r) const;
    std::string csv() const; // columns r,value
};

// Evaluator for psihat_0: even Taylor series (from bump moments, accurate to
// ~1e-15) for r <= 2, the tabulated profile beyond, 0 past r_max.
class Psi0Hat {
  public:
    double operator()(double r) const;
    const RadialProfile& profile() const { return profile_; }
    double normalization() const { return norm_constant_; }

    friend Psi0Hat tabulate_psi0_hat(const BumpSpec& spec, double r_max, int nodes_hint);

  private:
    std::vector<double> series_coeff_; // psihat_0(r) = sum a_m r^{2m}, r <= 2
    RadialProfile profile_;
    double norm_constant_ = 0.0; // c with integral psi_0 = 1
};

// Hankel-quadrature tabulation: psihat_0(r) = 2 pi int_0^{1/2} psi_0(rho)
// J_0(2 pi r rho) rho drho on oscillation-resolving Gauss-Legendre panels;
// per-node error < 1e-9 certified by panel doubling.
Psi0Hat tabulate_psi0_hat(const BumpSpec& spec = {}, double r_max = -1.0, int nodes_hint = -1);

} // namespace charfun
