// grid.hpp -- uniform periodic grid containers for physical and frequency samples.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "charfun/errors.hpp"

namespace charfun {

// Uniform grid over the periodic box [0,L)^dim, n samples per axis.
// n is a power of two so that h = L/n and h*n == L hold exactly in binary
// floating point.
struct GridSpec {
    int dim = 2;
    int n = 0;
    double box_length = 1.0;

    double spacing() const { return box_length / n; }

    std::int64_t cell_count() const {
        std::int64_t c = 1;
        for (int a = 0; a < dim; ++a) c *= n;
        return c;
    }

    double cell_measure() const {
        double m = 1.0;
        for (int a = 0; a < dim; ++a) m *= spacing();
        return m;
    }

    double freq_cell_measure() const {
        double m = 1.0;
        for (int a = 0; a < dim; ++a) m /= box_length;
        return m;
    }

    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int dim, int n, double box_length);
void validate_grid(const GridSpec& spec);

// Real samples at lattice points x_j = j*h, j in [0,n)^dim, row-major
// (last axis contiguous).
struct ScalarField {
    GridSpec spec;
    std::vector<double> values;
};

ScalarField make_field(const GridSpec& spec, double fill = 0.0);

// Complex samples at frequencies xi_m = m/L, m in [-n/2, n/2)^dim, stored
// centered: storage index c = m + n/2 per axis, row-major. value(xi_m)
// approximates the continuous transform integral of the box-supported field.
struct Spectrum {
    GridSpec spec;
    std::vector<std::complex<double>> values;
};

Spectrum make_spectrum(const GridSpec& spec);

// Coordinate helpers (dim <= 3).

// Multi-index of a flat position, row-major.
inline std::array<int, 3> unflatten(const GridSpec& spec, std::int64_t flat) {
    std::array<int, 3> c{0, 0, 0};
    for (int a = spec.dim - 1; a >= 0; --a) {
        c[static_cast<std::size_t>(a)] = static_cast<int>(flat % spec.n);
        flat /= spec.n;
    }
    return c;
}

// |x_j| for a physical sample (lattice point measured from the box origin).
double lattice_radius(const GridSpec& spec, std::int64_t flat);

// |xi_m| for a centered frequency sample.
double frequency_radius(const GridSpec& spec, std::int64_t flat);

} // namespace charfun
