// grid.cpp
#include "charfun/grid.hpp"

#include <bit>
#include <cmath>
#include <cstddef>

namespace charfun {

void validate_grid(const GridSpec& spec) {
    if (spec.dim < 1 || spec.dim > 3) throw ConfigError("grid: dim must be 1, 2 or 3, got " + std::to_string(spec.dim));
    if (spec.n < 16 || !std::has_single_bit(static_cast<unsigned>(spec.n)))
        throw ConfigError("grid: n must be a power of two >= 16, got " + std::to_string(spec.n));
    if (!(spec.box_length > 0.0) || !std::isfinite(spec.box_length))
        throw ConfigError("grid: box_length must be positive and finite");
}

GridSpec make_grid(int dim, int n, double box_length) {
    GridSpec spec{dim, n, box_length};
    validate_grid(spec);
    return spec;
}

ScalarField make_field(const GridSpec& spec, double fill) {
    validate_grid(spec);
    return ScalarField{spec, std::vector<double>(static_cast<std::size_t>(spec.cell_count()), fill)};
}

Spectrum make_spectrum(const GridSpec& spec) {
    validate_grid(spec);
    return Spectrum{spec, std::vector<std::complex<double>>(static_cast<std::size_t>(spec.cell_count()))};
}

double lattice_radius(const GridSpec& spec, std::int64_t flat) {
    const auto c = unflatten(spec, flat);
    const double h = spec.spacing();
    double r2 = 0.0;
    for (int a = 0; a < spec.dim; ++a) {
        const double x = c[static_cast<std::size_t>(a)] * h;
        r2 += x * x;
    }
    return std::sqrt(r2);
}

double frequency_radius(const GridSpec& spec, std::int64_t flat) {
    const auto c = unflatten(spec, flat);
    double r2 = 0.0;
    for (int a = 0; a < spec.dim; ++a) {
        const double xi = (c[static_cast<std::size_t>(a)] - spec.n / 2) / spec.box_length;
        r2 += xi * xi;
    }
    return std::sqrt(r2);
}

} // namespace charfun
