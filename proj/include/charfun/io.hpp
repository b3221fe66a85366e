// io.hpp -- flat binary field/spectrum format (CFL1), CSV helpers, atomic writes.
//
// CFL1 layout, little-endian:
//   bytes 0..3   magic "CFL1"
//   bytes 4..5   dim   (uint16)
//   bytes 6..7   n     (uint16)
//   bytes 8..15  L     (float64)
// followed by row-major float64 payload: n^dim values for a field,
// n^dim (re,im) pairs for a spectrum. Reader distinguishes by payload size.
#pragma once

#include <filesystem>
#include <string>

#include "charfun/grid.hpp"
#include "charfun/norms.hpp"

namespace charfun {

void write_field(const std::filesystem::path& path, const ScalarField& f);
void write_spectrum(const std::filesystem::path& path, const Spectrum& s);
ScalarField read_field(const std::filesystem::path& path);
Spectrum read_spectrum(const std::filesystem::path& path);

// Write-temp-rename so concurrent readers never see partial files.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

// Distribution function CSV: columns lambda,measure (one row per distinct
// sample magnitude, evaluated just below it where the sup is attained).
std::string distribution_csv(const DistributionFunction& d);

std::string format_double(double v); // shortest round-trip "%.17g"

} // namespace charfun
