// test_bessel.cpp -- J0/J1 against the standard library special functions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "charfun/bessel.hpp"

using namespace charfun;

TEST_CASE("j0/j1 match std::cyl_bessel_j across the switchover") {
    for (double x = 0.0; x <= 200.0; x += 0.173) {
        CHECK(bessel_j0(x) == doctest::Approx(std::cyl_bessel_j(0.0, x)).epsilon(1e-9).scale(1.0));
        CHECK(bessel_j1(x) == doctest::Approx(std::cyl_bessel_j(1.0, x)).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("known values and zeros") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-12);  // first zero of J0
    CHECK(std::abs(bessel_j1(3.8317059702075123)) < 1e-12); // first zero of J1
    CHECK(bessel_j0(-3.0) == bessel_j0(3.0));               // even
    CHECK(bessel_j1(-3.0) == -bessel_j1(3.0));              // odd
}
