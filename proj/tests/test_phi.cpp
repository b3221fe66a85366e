// test_phi.cpp -- bump transform tabulation, partition constants, vanishing
// moments, multiplier families.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "charfun/bessel.hpp"
#include "charfun/bump.hpp"
#include "charfun/errors.hpp"
#include "charfun/phi.hpp"

using namespace charfun;

namespace {

const std::shared_ptr<const Psi0Hat>& shared_psi0hat() {
    static const auto p = std::make_shared<const Psi0Hat>(tabulate_psi0_hat());
    return p;
}

const PhiFunction& phi_n(int order) {
    static const PhiFunction phis[3] = {build_phi(0, shared_psi0hat()), build_phi(1, shared_psi0hat()),
                                        build_phi(2, shared_psi0hat())};
    return phis[static_cast<std::size_t>(order)];
}

} // namespace

TEST_CASE("psihat_0 tabulation") {
    const Psi0Hat& psi = *shared_psi0hat();

    SUBCASE("normalization: psihat_0(0) = integral psi_0 = 1") {
        CHECK(psi(0.0) == doctest::Approx(1.0).epsilon(1e-8));
    }

    SUBCASE("superpolynomial tail: |psihat_0(64)| < 1e-6") {
        CHECK(std::abs(psi(64.0)) < 1e-6);
    }

    SUBCASE("series and quadrature branches agree where they meet") {
        // r <= 2 evaluates the Taylor series; the table holds quadrature
        // values at the same radii.
        const auto& prof = psi.profile();
        for (std::size_t i = 0; i < prof.lin_r.size(); ++i) {
            const double r = prof.lin_r[i];
            if (r > 2.0) break;
            CHECK(psi(r) == doctest::Approx(prof.lin_v[i]).epsilon(1e-10).scale(1.0));
        }
    }

    SUBCASE("profile evaluation reproduces stored nodes exactly") {
        const auto& prof = psi.profile();
        for (std::size_t i = 0; i < prof.lin_r.size(); i += 37) CHECK(prof(prof.lin_r[i]) == prof.lin_v[i]);
        for (std::size_t i = 0; i < prof.geo_t.size(); i += 37) {
            const double r = std::exp2(prof.geo_t[i]);
            CHECK(prof(r) == doctest::Approx(prof.geo_v[i]).epsilon(1e-13).scale(1e-14));
        }
    }

    SUBCASE("real and even in r") {
        CHECK(psi(1.3) == psi(-1.3));
    }

    SUBCASE("csv export") {
        const auto csv = psi.profile().csv();
        CHECK(csv.rfind("r,value\n", 0) == 0);
    }
}

TEST_CASE("build_phi basics") {
    CHECK_THROWS_AS(build_phi(5, shared_psi0hat()), ConfigError);
    CHECK_THROWS_AS(build_phi(-1, shared_psi0hat()), ConfigError);

    SUBCASE("phi(0) = 0 exactly, for every order") {
        for (int n = 0; n <= 2; ++n) CHECK(phi_n(n).g(0.0) == 0.0);
    }

    SUBCASE("N=0: |phi(0)| below 1e-10 trivially") {
        CHECK(std::abs(phi_n(0).g(0.0)) < 1e-10);
    }

    SUBCASE("N=2: central-difference derivatives at 0 through order 3 vanish") {
        for (const auto& e : moment_check(phi_n(2), 3)) CHECK(e.magnitude < 1e-6);
    }

    SUBCASE("decay faster than |xi|^-8 between 64 and 256") {
        for (int n = 0; n <= 2; ++n) {
            const double hi = std::abs(phi_n(n).g(256.0));
            const double lo = std::abs(phi_n(n).g(64.0));
            if (lo > 0.0) CHECK(hi / lo < std::pow(4.0, -8.0));
        }
    }
}

TEST_CASE("partition certification") {
    const PhiFunction& phi = phi_n(0);

    SUBCASE("constants positive and finite for N=0") {
        CHECK(phi.constants().c1 > 0.0);
        CHECK(std::isfinite(phi.constants().c2));
        CHECK(phi.constants().c1_quartic > 0.0);
        CHECK(std::isfinite(phi.constants().c2_quartic));
    }

    SUBCASE("dyadic dilation invariance to 1e-8") {
        const PartitionConstants a = certify_partition(phi, 1.0);
        const PartitionConstants b = certify_partition(phi, 2.0);
        CHECK(b.c1 == doctest::Approx(a.c1).epsilon(1e-8));
        CHECK(b.c2 == doctest::Approx(a.c2).epsilon(1e-8));
        CHECK(b.c1_quartic == doctest::Approx(a.c1_quartic).epsilon(1e-8));
        CHECK(b.c2_quartic == doctest::Approx(a.c2_quartic).epsilon(1e-8));
    }

    SUBCASE("quartic sum bounded below on a wide range") {
        for (double r = 0.7; r < 500.0; r *= 1.37)
            CHECK(phi.quartic_sum(r) >= phi.constants().c1_quartic * (1.0 - 1e-9));
    }
}

TEST_CASE("moment table") {
    SUBCASE("beta = (0,0) below 1e-10 for every order") {
        for (int n = 0; n <= 2; ++n) {
            const auto t = moment_check(phi_n(n), 0);
            REQUIRE(t.size() == 1);
            CHECK(t[0].magnitude < 1e-10);
        }
    }

    SUBCASE("N=1: first moments vanish") {
        for (const auto& e : moment_check(phi_n(1), 1)) CHECK(e.magnitude < 1e-6);
    }

    SUBCASE("N=2: all moments through |beta| = 3, including (2,1)") {
        bool saw21 = false;
        for (const auto& e : moment_check(phi_n(2), 3)) {
            CHECK(e.magnitude < 1e-6);
            saw21 = saw21 || (e.b1 == 2 && e.b2 == 1);
        }
        CHECK(saw21);
    }

    SUBCASE("beta_max >= 2^N rejected") {
        CHECK_THROWS_AS(moment_check(phi_n(1), 2), ConfigError);
    }
}

TEST_CASE("multiplier families") {
    const PhiFunction& phi = phi_n(1);
    const double s = 0.5;

    SUBCASE("m_k and m'_k vanish at the origin") {
        for (int k : {1, 3, 7}) {
            CHECK(multiplier_m(phi, k, s)(0.0) == 0.0);
            CHECK(multiplier_m_prime(phi, k, s)(0.0) == 0.0);
        }
    }

    SUBCASE("peak value: m_k(2^k) -> g^2(1) with 2^{-2k} relative defect") {
        const double g2_1 = phi.g2(1.0);
        for (int k : {4, 6, 8}) {
            const double mk = multiplier_m(phi, k, s)(std::exp2(k));
            const double expected = g2_1 * std::exp2(k * s) * std::pow(1.0 + std::exp2(2.0 * k), -0.5 * s);
            CHECK(mk == doctest::Approx(expected).epsilon(1e-12));
            CHECK(mk == doctest::Approx(g2_1).epsilon(std::exp2(-2.0 * k) * 2.0));
        }
    }

    SUBCASE("m_k * m'_k = g^4 / quartic_sum <= 1 pointwise") {
        for (int k : {2, 5}) {
            const auto mk = multiplier_m(phi, k, s);
            const auto mkp = multiplier_m_prime(phi, k, s);
            for (double r = 0.3; r < 2000.0; r *= 1.618) {
                const double prod = mk(r) * mkp(r);
                CHECK(prod <= 1.0 + 1e-9);
                const double expected = phi.g4(std::ldexp(r, -k)) / phi.quartic_sum(r);
                CHECK(prod == doctest::Approx(expected).epsilon(1e-8).scale(1.0));
            }
        }
    }

    SUBCASE("partition of unity: m0' Phi0 + sum_k 2^{ks} m'_k g^2-piece = (1+r^2)^{s/2}") {
        for (double r : {0.9, 3.7, 21.0, 240.0}) {
            double acc = multiplier_m0_prime(phi)(r) * low_pass_symbol(phi, s, r);
            for (int k = 1; k <= 40; ++k)
                acc += std::exp2(k * s) * multiplier_m_prime(phi, k, s)(r) * phi.g2(std::ldexp(r, -k));
            CHECK(acc == doctest::Approx(std::pow(1.0 + r * r, 0.5 * s)).epsilon(1e-8));
        }
    }

    SUBCASE("random-sign sums uniformly bounded on a dense grid") {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<int> coin(0, 1);
        double worst = 0.0;
        for (int pat = 0; pat < 100; ++pat) {
            double omega[20];
            for (double& w : omega) w = coin(rng) ? 1.0 : -1.0;
            for (double r = 1.0; r < 2e6; r *= 1.1) {
                double acc = 0.0;
                for (int k = 1; k <= 20; ++k) acc += omega[k - 1] * multiplier_m(phi, k, s)(r);
                worst = std::max(worst, std::abs(acc));
            }
        }
        CHECK(std::isfinite(worst));
        CHECK(worst < 16.0 * phi.constants().c2); // same scale as the square sum bound
    }
}

TEST_CASE("mikhlin octave stability") {
    const MikhlinReport rep = mikhlin_check(phi_n(1), 0.5, 50, 2027);
    REQUIRE(rep.rows.size() == 12);
    for (const auto& row : rep.rows) {
        INFO("alpha = (", row.b1, ",", row.b2, ") dual = ", row.dual);
        CHECK(row.spread < 10.0);
        for (double v : row.octave_max) CHECK(std::isfinite(v));
    }

    SUBCASE("single m_k: scale-invariant derivative bounds near the peak") {
        const PhiFunction& phi = phi_n(1);
        // |d/dr m_k| at r = 2^k scales like 2^{-k} (chain rule on the dilation).
        double prev = 0.0;
        for (int k : {5, 6, 7}) {
            const auto m = multiplier_m(phi, k, 0.0);
            const double r = std::exp2(k), tau = 1e-4 * r;
            const double d1 = std::abs((m(r + tau) - m(r - tau)) / (2.0 * tau));
            if (prev > 0.0) CHECK(d1 / prev == doctest::Approx(0.5).epsilon(0.05));
            prev = d1;
        }
    }
}
