// acceptance.cpp -- end-to-end acceptance suite. One line per criterion;
// exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "charfun/experiments.hpp"
#include "charfun/io.hpp"
#include "oracles.hpp"

using namespace charfun;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioConfig disk_config(int n) {
    ScenarioConfig cfg;
    cfg.name = "disk";
    cfg.shape = Disk{{0.5, 0.5}, 0.25};
    cfg.n = n;
    cfg.gamma_override = 1.0; // exact codimension of the circle; p = 4/3 on the nose
    return cfg;
}

ScenarioConfig koch_config(int n) {
    ScenarioConfig cfg;
    cfg.name = "koch";
    cfg.shape = KochSnowflake{{0.5, 0.5}, 0.3, 6};
    cfg.n = n;
    cfg.fit_i_min = 4;
    cfg.fit_i_max = 9;
    return cfg;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

} // namespace

// Criterion 1: boundary geometry of the disk and the snowflake.
void criterion_1(Scenario& disk2048, Scenario& koch4096) {
    const auto t0 = std::chrono::steady_clock::now();
    const double R = 0.25;
    const double h = disk2048.grid().spacing();

    double worst_band = 0.0;
    for (double delta = 4.0 * h; delta <= 1.0 / 16.0 + 1e-12; delta *= 2.0) {
        const double vol = neighborhood_volume(disk2048.distance_map(), delta);
        worst_band = std::max(worst_band, std::abs(vol - 4.0 * std::numbers::pi * R * delta) /
                                              (4.0 * std::numbers::pi * R * delta));
    }
    const double gamma_disk = disk2048.profile().gamma_hat;

    const double gamma_koch = koch4096.profile().gamma_hat;
    const auto poly = koch_polygon({0.5, 0.5}, 0.3, 6).polygons[0];
    const double gamma_box = oracles::box_counting_dimension(poly, 4, 9);

    const double elapsed = seconds_since(t0);
    const bool pass = worst_band <= 0.03 && std::abs(gamma_disk - 1.0) <= 0.05 &&
                      std::abs(gamma_koch - gamma_box) <= 0.06 && elapsed < 60.0;
    report(1, pass,
           fmt("band dev %.4f (<=0.03), gamma_disk %.4f, gamma_koch %.4f vs box-count %.4f", worst_band,
               gamma_disk, gamma_koch, gamma_box) +
               fmt(", runtime %.1fs (<60s)", elapsed));
}

// Criterion 2: distance transform exact against brute force, 100 random grids.
void criterion_2() {
    std::mt19937_64 rng(20260808);
    int checked = 0;
    bool exact = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = (trial % 2 == 0) ? 16 : 32;
        const GridSpec g = make_grid(2, n, 1.0);
        ScalarField f = make_field(g);
        std::bernoulli_distribution bit(0.05 + 0.9 * (trial % 10) / 9.0);
        bool any0 = false, any1 = false;
        for (auto& v : f.values) {
            v = bit(rng) ? 1.0 : 0.0;
            (v > 0.5 ? any1 : any0) = true;
        }
        if (!any0 || !any1) continue;
        ++checked;
        const DistanceMap m = distance_transform(f);
        const auto brute = oracles::edt_brute_force_squared(f);
        const double h = g.spacing();
        for (std::size_t i = 0; i < brute.size(); ++i)
            if (m.values[i] != h * std::sqrt(brute[i])) exact = false;
    }
    report(2, exact && checked >= 95, fmt("%g random indicators, exact match: %g", checked, exact ? 1.0 : 0.0));
}

// Criterion 3: phi certification.
void criterion_3(Scenario& disk2048) {
    bool pass = true;
    std::string detail;
    const auto psi = std::make_shared<const Psi0Hat>(tabulate_psi0_hat());
    double worst_moment = 0.0;
    for (int order = 0; order <= 2; ++order) {
        const PhiFunction phi = build_phi(order, psi);
        pass = pass && std::abs(phi.g(0.0)) < 1e-10;
        pass = pass && phi.constants().c1 > 0.0 && phi.constants().c1_quartic > 0.0;
        for (const auto& e : moment_check(phi, (1 << order) - 1)) worst_moment = std::max(worst_moment, e.magnitude);
        const PartitionConstants dil = certify_partition(phi, 2.0);
        const double dev = std::max(std::abs(dil.c1 - phi.constants().c1) / phi.constants().c1,
                                    std::abs(dil.c2 - phi.constants().c2) / phi.constants().c2);
        pass = pass && dev < 1e-8;
    }
    pass = pass && worst_moment < 1e-6;

    const MikhlinReport mik = mikhlin_check(disk2048.phi(), 0.5, 50, 2027);
    double worst_spread = 0.0;
    for (const auto& row : mik.rows) worst_spread = std::max(worst_spread, row.spread);
    pass = pass && worst_spread < 10.0;
    report(3, pass, fmt("worst moment %.3g (<1e-6), mikhlin spread %.2f (<10)", worst_moment, worst_spread));
}

// Criterion 4: dyadic block slopes, disk at n=4096 and snowflake.
void criterion_4(Scenario& disk4096, Scenario& koch4096) {
    CheckResult disk = run_l1_l2_blocks(disk4096);
    const double l1 = disk.details["l1_slope"].get<double>();
    const double l2 = disk.details["l2_slope"].get<double>();
    CheckResult koch = run_l1_l2_blocks(koch4096);
    const double l2k = koch.details["l2_slope"].get<double>();
    const double wantk = -0.5 * (2.0 - koch4096.profile().gamma_hat);
    const bool pass = std::abs(l2 + 0.5) <= 0.1 && std::abs(l1 - 0.5) <= 0.15 && std::abs(l2k - wantk) <= 0.08;
    report(4, pass, fmt("disk L2 %.3f (-0.5+-0.1), L1 %.3f (0.5+-0.15), koch L2 %.3f vs %.3f (+-0.08)", l2, l1, l2k,
                        wantk));
}

// Criterion 5: critical weak-norm certificate and the subcritical negative
// control.
void criterion_5(Scenario& disk4096) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult weak = run_weak_norm(disk4096);
    const bool stable = weak.details["stable_under_doubling"].get<bool>();
    const double slope = weak.details["certificate"]["product_slope"].get<double>();
    const double octaves = weak.details["certificate"]["octaves"].get<double>();
    const double c_max = weak.details["certificate"]["constant"].get<double>();

    // Negative control: below the critical exponent the truncated norms keep
    // growing geometrically per octave instead of flattening out.
    const double mean_crit = weak.details["mean_log2_increment_ratio"].get<double>();
    std::vector<double> log_ratios;
    {
        const Annulus region = disk4096.half_nyquist();
        const double p = 1.25;
        double prev = 0.0;
        for (int o = 2; std::exp2(o + 1) <= region.r_max; ++o) {
            const Annulus ann{std::exp2(o), std::exp2(o + 1)};
            const double inc = std::pow(lp_norm(disk4096.spectrum(), p, ann), p);
            if (prev > 0.0) log_ratios.push_back(std::log2(inc / prev));
            prev = inc;
        }
    }
    double mean_sub = 0.0;
    for (double v : log_ratios) mean_sub += v;
    mean_sub /= static_cast<double>(log_ratios.size());

    const double elapsed = seconds_since(t0);
    const bool pass = weak.status == Status::pass && stable && std::abs(slope) <= 0.15 && octaves >= 6.0 &&
                      mean_sub >= 0.07 && std::abs(mean_crit) <= 0.05 && elapsed < 180.0;
    report(5, pass,
           fmt("cert slope %.3f over %.1f octaves (C=%.3g), stable %g, ", slope, octaves, c_max, stable ? 1.0 : 0.0) +
               fmt("increment trend: p=4/3 %.3f (flat), p=1.25 %.3f (>=0.07), %.0fs (<180s)", mean_crit, mean_sub,
                   elapsed));
}

// Criterion 6: Bessel sharpness at n=4096.
void criterion_6(Scenario& disk4096) {
    CheckResult r = run_bessel_oracle(disk4096);
    const double ray = r.details["ray_rel_error"].get<double>();
    const double env = r.details["envelope_decay_exponent"].get<double>();
    const double dev = r.details["l43_octave_increment_max_dev"].get<double>();
    const bool pass = ray < 0.02 && std::abs(env + 1.5) <= 0.05 && dev <= 0.20;
    report(6, pass, fmt("ray error %.5f (<0.02), envelope exponent %.4f (-1.5+-0.05), L4/3 increments dev %.3f (<=0.2)",
                        ray, env, dev));
}

// Criterion 7: Fourier-norm bound for disk p=1.6, square p=1.8, Plancherel
// at p=2.
void criterion_7(Scenario& disk4096) {
    bool pass = true;
    std::string detail;

    CheckResult d = run_fchar(disk4096); // config p defaults to 1.6
    const double ratio = d.details["ratio"].get<double>();
    const double ratio2 = d.details["ratio_at_half_resolution"].get<double>();
    pass = pass && d.status == Status::pass && std::isfinite(ratio) && std::abs(ratio - ratio2) <= 0.25 * ratio2;
    detail += fmt("disk p=1.6 ratio %.4f vs %.4f; ", ratio, ratio2);

    ScenarioConfig sq = disk_config(2048);
    sq.name = "square";
    sq.shape = AxisRect{{0.25, 0.25}, {0.5, 0.5}};
    sq.p = 1.8;
    Scenario square(sq);
    CheckResult s = run_fchar(square);
    const double rs = s.details["ratio"].get<double>();
    const double rs2 = s.details["ratio_at_half_resolution"].get<double>();
    pass = pass && s.status == Status::pass && std::abs(rs - rs2) <= 0.25 * rs2;
    detail += fmt("square p=1.8 ratio %.4f vs %.4f; ", rs, rs2);

    sq.p = 2.0;
    Scenario square2(sq);
    CheckResult pl = run_fchar(square2);
    const double rel = pl.details["plancherel_rel_error"].get<double>();
    pass = pass && pl.status == Status::pass && rel < 1e-8;
    detail += fmt("plancherel rel err %.2g (<1e-8)", rel);
    report(7, pass, detail);
}

// Criterion 8: two-sided inequality ratio spread over the smooth family.
void criterion_8() {
    const GridSpec g = make_grid(2, 256, 1.0);
    const auto family = smooth_test_family(g);
    const PhiFunction phi = build_phi(1);
    double worst = 0.0;
    bool pass = true;
    for (const double s : {0.25, 0.5}) {
        for (const auto& [q, r] : {std::pair{2.0, 2.0}, {2.0, kInf}, {4.0, kInf}}) {
            const auto rep = verify_lp_inequality(family, phi, s, q, r);
            const double spread = rep.ratio_max / rep.ratio_min;
            worst = std::max(worst, spread);
            pass = pass && spread < 10.0;
        }
    }
    report(8, pass, fmt("worst RHS/LHS spread %.2f (<10) over 6 (q,r,s) combinations", worst));
}

// Criterion 9: Lorentz-Sobolev certificate on the snowflake, with negative
// control.
void criterion_9(Scenario& koch4096) {
    CheckResult r = run_sobolev_weak(koch4096);
    const bool stable = r.details["stable_under_doubling"].get<bool>();
    const double slope = r.details["certificate"]["product_slope"].get<double>();
    const double octaves = r.details["certificate"]["octaves"].get<double>();

    ScenarioConfig bad = koch_config(1024);
    bad.gamma_override = 1.9;
    Scenario control(bad);
    bool control_fails = false;
    try {
        control_fails = run_sobolev_weak(control).status == Status::fail;
    } catch (const std::exception&) {
        control_fails = true;
    }
    const bool pass = r.status == Status::pass && stable && octaves >= 6.0 && control_fails;
    report(9, pass, fmt("cert slope %.3f over %.1f octaves, stable %g, gamma-override control fails %g", slope,
                        octaves, stable ? 1.0 : 0.0, control_fails ? 1.0 : 0.0));
}

// Criterion 10: byte-identical reports for identical config and seed.
void criterion_10() {
    const auto dir = std::filesystem::temp_directory_path() / "charfun_acceptance_det";
    ScenarioConfig cfg = disk_config(512);
    cfg.seed = 31337;
    Scenario a(cfg), b(cfg);
    verify_all(a, dir / "run1");
    verify_all(b, dir / "run2");
    const auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string r1 = slurp(dir / "run1" / "report.json");
    const std::string r2 = slurp(dir / "run2" / "report.json");
    report(10, !r1.empty() && r1 == r2, fmt("report.json %g bytes, byte-identical: %g", (double)r1.size(),
                                            r1 == r2 ? 1.0 : 0.0));
}

int main() {
    std::printf("acceptance suite (d = 2, desk scale)\n");
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Scenario disk2048(disk_config(2048));
        Scenario disk4096(disk_config(4096));
        Scenario koch4096(koch_config(4096));

        criterion_1(disk2048, koch4096);
        criterion_2();
        criterion_3(disk2048);
        criterion_4(disk4096, koch4096);
        criterion_5(disk4096);
        criterion_6(disk4096);
        criterion_7(disk4096);
        criterion_8();
        criterion_9(koch4096);
        criterion_10();
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("acceptance: %d failure(s), total %.0fs\n", g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
