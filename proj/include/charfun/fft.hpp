// fft.hpp -- forward/inverse transforms tying DFT samples to the continuous
// Fourier transform: forward = h^dim * DFT, centered so frequency 0 sits at
// storage index n/2 per axis.
#pragma once

#include "charfun/grid.hpp"
#include "charfun/parallel.hpp"

namespace charfun {

Spectrum forward_transform(const ScalarField& f, Exec exec = Exec::parallel);
ScalarField inverse_transform(const Spectrum& s, Exec exec = Exec::parallel);

// In-place unnormalized complex DFT along every axis (sign = -1 forward,
// +1 inverse); exposed for the benchmark target.
void dft_all_axes(std::vector<std::complex<double>>& data, const GridSpec& spec, int sign, Exec exec);

} // namespace charfun
