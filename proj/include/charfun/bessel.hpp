// bessel.hpp -- J0 and J1 by power series with a Hankel asymptotic switchover.
#pragma once

namespace charfun {

double bessel_j0(double x);
double bessel_j1(double x);

// Closed-form 2D transform of the disk indicator of the given radius:
// R J1(2 pi R |xi|)/|xi|, area pi R^2 at xi = 0.
double disk_indicator_transform(double radius, double xi_norm);

} // namespace charfun
