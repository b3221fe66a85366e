// norms.hpp -- L^p norms, empirical distribution functions and Lorentz
// quasinorms on grid samples, with the quadrature conventions:
// physical cell measure h^dim, frequency cell measure L^-dim.
#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "charfun/grid.hpp"
#include "charfun/parallel.hpp"

namespace charfun {

// Radial restriction a <= |.| < b on the natural coordinate of the side
// (|x_j| for fields, |xi_m| for spectra).
struct Annulus {
    double r_min = 0.0;
    double r_max = std::numeric_limits<double>::infinity();
    bool contains(double r) const { return r >= r_min && r < r_max; }
};

double lp_norm(const ScalarField& f, double p, std::optional<Annulus> region = {}, Exec exec = Exec::parallel);
double lp_norm(const Spectrum& s, double p, std::optional<Annulus> region = {}, Exec exec = Exec::parallel);

// Empirical distribution of sample magnitudes: lambda -> mu * #{ |v| > lambda }.
struct DistributionFunction {
    std::vector<double> magnitudes; // sorted ascending
    double cell_measure = 0.0;

    double operator()(double lambda) const;
    double total_measure() const { return cell_measure * static_cast<double>(magnitudes.size()); }
};

DistributionFunction distribution(const ScalarField& f, std::optional<Annulus> region = {});
DistributionFunction distribution(const Spectrum& s, std::optional<Annulus> region = {});

// Lorentz quasinorm ||.||_{q,r}. r = inf: sup over the sample-induced lambda
// grid of lambda * d(lambda)^{1/q} (attained exactly for empirical
// distributions). Finite r: exact piecewise-constant quadrature of the
// rearrangement integral (int (t^{1/q} f*(t))^r dt/t)^{1/r}.
double lorentz_quasinorm(const DistributionFunction& d, double q, double r);
double lorentz_quasinorm(const ScalarField& f, double q, double r, std::optional<Annulus> region = {});
double lorentz_quasinorm(const Spectrum& s, double q, double r, std::optional<Annulus> region = {});

inline constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace charfun
