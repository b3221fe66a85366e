// experiments.cpp
#include "charfun/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <tuple>

#include "charfun/bessel.hpp"
#include "charfun/errors.hpp"
#include "charfun/fft.hpp"
#include "charfun/io.hpp"

namespace charfun {

namespace {

Vec2 parse_vec2(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(std::string("config: ") + what + " must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Shape parse_shape(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "disk") {
        return Disk{parse_vec2(j.at("center"), "disk center"), j.at("radius").get<double>()};
    }
    if (type == "axis_rect") {
        return AxisRect{parse_vec2(j.at("corner"), "rect corner"), parse_vec2(j.at("widths"), "rect widths")};
    }
    if (type == "koch_snowflake") {
        return KochSnowflake{parse_vec2(j.at("center"), "snowflake center"), j.at("circumradius").get<double>(),
                             j.at("depth").get<int>()};
    }
    if (type == "lipschitz_graph") {
        return make_lipschitz_graph(j.at("x0").get<double>(), j.at("width").get<double>(),
                                    j.at("base_y").get<double>(), j.at("mid_height").get<double>(),
                                    j.value("lipschitz_k", 1.0), j.value("segments", 64),
                                    j.value("seed", std::uint64_t{0}));
    }
    if (type == "polygon_union") {
        PolygonUnion pu;
        for (const auto& poly : j.at("polygons")) {
            Polygon p;
            for (const auto& v : poly) p.vertices.push_back(parse_vec2(v, "polygon vertex"));
            if (p.vertices.size() < 3) throw ConfigError("config: polygon needs >= 3 vertices");
            pu.polygons.push_back(std::move(p));
        }
        return pu;
    }
    throw ConfigError("config: unknown shape type '" + type + "'");
}

} // namespace

ScenarioConfig parse_config(const nlohmann::json& j) {
    try {
        ScenarioConfig cfg;
        cfg.name = j.value("name", std::string("scenario"));
        cfg.shape = parse_shape(j.at("shape"));
        if (j.contains("grid")) {
            cfg.n = j["grid"].value("n", cfg.n);
            cfg.box_length = j["grid"].value("L", cfg.box_length);
        }
        if (j.contains("raster")) {
            const std::string mode = j["raster"].value("mode", std::string("binary"));
            if (mode == "binary") cfg.raster.mode = RasterOptions::Mode::binary_supersampled;
            else if (mode == "coverage") cfg.raster.mode = RasterOptions::Mode::coverage;
            else throw ConfigError("config: raster mode must be 'binary' or 'coverage'");
            cfg.raster.subsamples = j["raster"].value("subsamples", 5);
        }
        if (j.contains("phi")) {
            cfg.phi_moment_order = j["phi"].value("moment_order", cfg.phi_moment_order);
            cfg.phi_r_max = j["phi"].value("r_max", cfg.phi_r_max);
            cfg.phi_nodes = j["phi"].value("nodes", cfg.phi_nodes);
        }
        if (j.contains("exponents")) {
            const auto& e = j["exponents"];
            if (e.contains("gamma") && !e["gamma"].is_string()) cfg.gamma_override = e["gamma"].get<double>();
            cfg.p = e.value("p", cfg.p);
            cfg.q = e.value("q", cfg.q);
            cfg.s = e.value("s", cfg.s);
            cfg.p0 = e.value("p0", cfg.p0);
            cfg.p1 = e.value("p1", cfg.p1);
        }
        if (j.contains("fit_window")) {
            cfg.fit_i_min = j["fit_window"].value("i_min", cfg.fit_i_min);
            cfg.fit_i_max = j["fit_window"].value("i_max", cfg.fit_i_max);
        }
        cfg.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("expected_gamma")) cfg.expected_gamma = j["expected_gamma"].get<double>();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: parse error in " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::flag: return "flag";
        case Status::fail: return "fail";
    }
    return "fail";
}

Scenario::Scenario(ScenarioConfig cfg, Exec exec) : cfg_(std::move(cfg)), exec_(exec) {}

GridSpec Scenario::grid() const { return make_grid(2, cfg_.n, cfg_.box_length); }

const ScalarField& Scenario::indicator() {
    if (!indicator_) indicator_ = rasterize(cfg_.shape, grid(), cfg_.raster, exec_);
    return *indicator_;
}

const Spectrum& Scenario::spectrum() {
    if (!spectrum_) spectrum_ = forward_transform(indicator(), exec_);
    return *spectrum_;
}

const DistanceMap& Scenario::distance_map() {
    if (!map_) map_ = distance_transform(indicator(), exec_);
    return *map_;
}

const BoundaryProfile& Scenario::profile() {
    if (!profile_) profile_ = boundary_profile(distance_map(), cfg_.fit_i_min, cfg_.fit_i_max);
    return *profile_;
}

const PhiFunction& Scenario::phi() {
    if (!phi_) {
        BumpSpec bump{cfg_.phi_r_max, cfg_.phi_nodes};
        psi0hat_ = std::make_shared<const Psi0Hat>(tabulate_psi0_hat(bump));
        phi_ = build_phi(cfg_.phi_moment_order, psi0hat_);
    }
    return *phi_;
}

double Scenario::gamma() {
    if (cfg_.gamma_override) return *cfg_.gamma_override;
    return profile().gamma_hat;
}

double Scenario::critical_p() {
    const double g = gamma();
    const double dim = 2.0;
    if (!(g > 0.0) || !(g < dim)) throw ConfigError("gamma must lie in (0, dim), got " + format_double(g));
    return 2.0 * dim / (2.0 * dim - g);
}

double Scenario::sobolev_s() {
    if (cfg_.s > 0.0) return cfg_.s;
    const double g = gamma();
    const double dim = 2.0;
    if (!(g > 0.0) || !(g < dim)) throw ConfigError("gamma must lie in (0, dim), got " + format_double(g));
    return (dim - g) / cfg_.q;
}

double Scenario::area() {
    if (!area_) {
        double s = 0.0;
        for (double v : indicator().values) s += v;
        area_ = s * grid().cell_measure();
    }
    return *area_;
}

Annulus Scenario::half_nyquist() const { return Annulus{0.0, cfg_.n / (4.0 * cfg_.box_length)}; }

const Scenario::BlockNorms& Scenario::block_norms() {
    if (blocks_) return *blocks_;
    const Spectrum& s = spectrum();
    const PhiFunction& ph = phi();
    const Annulus region = half_nyquist();
    BlockNorms b;
    b.k_max = max_projection_index(s.spec);
    const double mu = s.spec.freq_cell_measure();
    const std::int64_t rows = s.spec.n;
    const std::int64_t row_len = s.spec.cell_count() / rows;
    for (int k = -6; k <= b.k_max; ++k) {
        const double inv = std::ldexp(1.0, -k);
        std::vector<double> p1(static_cast<std::size_t>(rows)), p2(static_cast<std::size_t>(rows));
        for_each_index(rows, exec_, [&](std::int64_t r) {
            double a1 = 0.0, a2 = 0.0;
            for (std::int64_t j = r * row_len; j < (r + 1) * row_len; ++j) {
                const double rad = frequency_radius(s.spec, j);
                if (!region.contains(rad)) continue;
                const double w = ph.g2(rad * inv);
                if (w == 0.0) continue;
                const double mag = std::abs(s.values[static_cast<std::size_t>(j)]);
                a1 += w * mag;
                a2 += w * w * mag * mag;
            }
            p1[static_cast<std::size_t>(r)] = a1;
            p2[static_cast<std::size_t>(r)] = a2;
        });
        double s1 = 0.0, s2 = 0.0;
        for (std::int64_t r = 0; r < rows; ++r) {
            s1 += p1[static_cast<std::size_t>(r)];
            s2 += p2[static_cast<std::size_t>(r)];
        }
        if (k <= 0) b.l1_low += mu * s1;
        else {
            b.l1.push_back(mu * s1);
            b.l2.push_back(std::sqrt(mu * s2));
        }
    }
    blocks_ = std::move(b);
    return *blocks_;
}

Scenario& Scenario::coarser(int factor) {
    auto it = coarser_.find(factor);
    if (it == coarser_.end()) {
        ScenarioConfig c = cfg_;
        c.n = cfg_.n / factor;
        if (c.n < 64) throw ConfigError("coarser scenario below n = 64");
        const int finest = static_cast<int>(std::round(std::log2(static_cast<double>(c.n)))) - 1;
        if (c.fit_i_max > finest) c.fit_i_max = finest;
        it = coarser_.emplace(factor, std::make_unique<Scenario>(std::move(c), exec_)).first;
    }
    return *it->second;
}

namespace {

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
    return fit_line(x, y).slope;
}

// The paper's block sums run to k = infinity; the grid stops at k_max. The
// mid blocks follow a clean power law (verified by the slope checks), so the
// missing tail is continued geometrically from a fit over the blocks before
// the last (the final block sits at the half-Nyquist edge and is distorted by
// the region cut on one side and aliasing on the other). Returns suffix sums
// S(N) = sum_{k>N} w_k including the continuation past k_max.
std::vector<double> suffix_sums_with_tail(const std::vector<double>& w) {
    const std::size_t m = w.size();
    double tail = 0.0;
    if (m >= 3) {
        std::vector<double> x, y;
        for (std::size_t i = (m >= 6 ? m - 6 : 0); i + 1 < m; ++i) {
            if (!(w[i] > 0.0)) continue;
            x.push_back(static_cast<double>(i));
            y.push_back(std::log2(w[i]));
        }
        if (x.size() >= 2) {
            const LineFit f = fit_line(x, y);
            const double rho = std::exp2(f.slope);
            if (rho > 0.0 && rho < 0.98) {
                const double next = std::exp2(f.intercept + f.slope * static_cast<double>(m));
                tail = next / (1.0 - rho);
            }
        }
    }
    std::vector<double> suffix(m + 1, 0.0);
    suffix[m] = tail;
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] + w[i];
    return suffix; // suffix[N] = sum_{k > N} with k 1-based stored at w[k-1]
}

// Octave increments of the p-th power of the truncated norm: contribution of
// each dyadic annulus [2^o, 2^{o+1}) to integral |hat chi|^p.
std::vector<std::pair<int, double>> octave_power_increments(const Spectrum& s, double p, const Annulus& region,
                                                            Exec exec) {
    const int o_min = 0;
    const int o_max = static_cast<int>(std::floor(std::log2(region.r_max))) - 1;
    std::vector<std::pair<int, double>> out;
    for (int o = o_min; o <= o_max; ++o) {
        const Annulus ann{std::exp2(o), std::min(std::exp2(o + 1), region.r_max)};
        const double nrm = lp_norm(s, p, ann, exec);
        out.emplace_back(o, std::pow(nrm, p));
    }
    return out;
}

} // namespace

CheckResult run_weak_norm(Scenario& sc) {
    CheckResult res;
    res.name = "weak_norm";
    const double gamma = sc.gamma();
    // The weak-norm statement lives at the critical exponent; the config's p
    // drives the Fourier-norm bound check instead.
    const double p = sc.critical_p();
    const double dim = 2.0;
    res.details["gamma"] = gamma;
    res.details["p"] = p;

    // Factor-2 stability of the weak quasinorm across three resolutions.
    std::vector<double> weak;
    for (int factor : {4, 2, 1}) {
        Scenario& s = factor == 1 ? sc : sc.coarser(factor);
        weak.push_back(lorentz_quasinorm(s.spectrum(), p, kInf, s.half_nyquist()));
    }
    res.details["weak_quasinorm_by_resolution"] = weak;
    bool stable = true;
    for (std::size_t i = 0; i + 1 < weak.size(); ++i) {
        const double ratio = weak[i + 1] / weak[i];
        if (!(ratio < 2.0 && ratio > 0.5)) stable = false;
    }
    res.details["stable_under_doubling"] = stable;

    // Two-term certificate at the finest grid: lambda dyadic, N picked by
    // 2^N ~ lambda^{-2/(2 dim - gamma)} (the certificate takes the best of
    // the neighbouring integer choices, as the ~ allows). L2 tails beyond the
    // resolvable band are continued geometrically.
    const auto& blocks = sc.block_norms();
    const int k_max = blocks.k_max;
    // The paper's first block sums k <= N, so the k <= 0 mass rides along.
    std::vector<double> prefix_l1(static_cast<std::size_t>(k_max) + 1, blocks.l1_low);
    for (int k = 1; k <= k_max; ++k)
        prefix_l1[static_cast<std::size_t>(k)] = prefix_l1[static_cast<std::size_t>(k - 1)] + blocks.l1[static_cast<std::size_t>(k - 1)];
    const std::vector<double> suffix_l2 = suffix_sums_with_tail(blocks.l2);

    // lambda grid inverts the N relation exactly (one point per scale, no
    // rounding sawtooth): lambda_N = 2^{-N (2 dim - gamma)/2}.
    std::vector<double> log2_lambda, log2_product, certs;
    double c_max = 0.0;
    for (int N = 1; N <= k_max - 2; ++N) {
        const double t = 0.5 * (2.0 * dim - gamma) * N;
        const double lambda = std::exp2(-t);
        const double t1 = prefix_l1[static_cast<std::size_t>(N)];
        const double t2 = suffix_l2[static_cast<std::size_t>(N)];
        const double cert = t1 / lambda + (t2 * t2) / (lambda * lambda);
        const double product = cert * std::pow(lambda, p);
        log2_lambda.push_back(-t);
        log2_product.push_back(std::log2(product));
        certs.push_back(cert);
        c_max = std::max(c_max, product);
    }
    if (log2_lambda.size() < 4) throw ConfigError("run_weak_norm: certificate band too short");
    const double octaves = log2_lambda.front() - log2_lambda.back();
    const double slope = slope_of(log2_lambda, log2_product);
    nlohmann::ordered_json prods = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < log2_lambda.size(); ++i)
        prods.push_back({log2_lambda[i], log2_product[i]});
    res.details["certificate"] = {{"octaves", std::abs(octaves)},
                                  {"constant", c_max},
                                  {"product_slope", slope},
                                  {"lambda_count", log2_lambda.size()},
                                  {"log2_products", prods}};

    // Octave increments of the truncated strong norm (log-growth signature at
    // the critical p, geometric growth below it).
    const auto incr = octave_power_increments(sc.spectrum(), p, sc.half_nyquist(), sc.exec());
    std::vector<double> log2_incr_ratio;
    nlohmann::ordered_json octj = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < incr.size(); ++i) {
        octj.push_back({{"octave", incr[i].first}, {"power_increment", incr[i].second}});
        if (i >= 2 && incr[i - 1].second > 0.0) // skip the tiny first annuli
            log2_incr_ratio.push_back(std::log2(incr[i].second / incr[i - 1].second));
    }
    double mean_ratio = 0.0;
    for (double v : log2_incr_ratio) mean_ratio += v;
    if (!log2_incr_ratio.empty()) mean_ratio /= static_cast<double>(log2_incr_ratio.size());
    res.details["octave_increments"] = octj;
    res.details["mean_log2_increment_ratio"] = mean_ratio;

    // Growth of the product breaks the lambda^{-p} claim; decay is slack
    // (the L1 block bound need not be sharp, e.g. for axis-aligned squares
    // whose transform concentrates on the frequency axes).
    const bool cert_ok = slope <= 0.15 && std::abs(octaves) >= 6.0;
    res.details["certificate_slope_ok"] = cert_ok;
    res.status = (stable && cert_ok) ? Status::pass : Status::fail;
    return res;
}

CheckResult run_l1_l2_blocks(Scenario& sc, DyadicReport* table) {
    CheckResult res;
    res.name = "l1_l2_blocks";
    const double gamma = sc.gamma();
    const auto& blocks = sc.block_norms();
    const int fit_lo = 3;
    const int fit_hi = std::min(8, blocks.k_max - 1);
    if (fit_hi - fit_lo + 1 < 4) throw ConfigError("run_l1_l2_blocks: fewer than 4 resolvable scales");

    DyadicReport rep;
    rep.name = "l1_l2_blocks";
    for (int k = 1; k <= blocks.k_max; ++k) rep.k.push_back(k);
    rep.add_column("l1_block", blocks.l1);
    rep.add_column("l2_block", blocks.l2);

    std::vector<double> xs, y1, y2;
    for (int k = fit_lo; k <= fit_hi; ++k) {
        xs.push_back(k);
        y1.push_back(std::log2(blocks.l1[static_cast<std::size_t>(k - 1)]));
        y2.push_back(std::log2(blocks.l2[static_cast<std::size_t>(k - 1)]));
    }
    const LineFit f1 = fit_line(xs, y1);
    const LineFit f2 = fit_line(xs, y2);
    rep.fits.push_back({"log2_l1_block", f1});
    rep.fits.push_back({"log2_l2_block", f2});
    if (table) *table = rep;

    const double want1 = 0.5 * gamma;
    const double want2 = -0.5 * (2.0 - gamma);
    res.details["gamma"] = gamma;
    res.details["fit_k"] = {fit_lo, fit_hi};
    res.details["l1_slope"] = f1.slope;
    res.details["l1_slope_expected"] = want1;
    res.details["l2_slope"] = f2.slope;
    res.details["l2_slope_expected"] = want2;
    // The L2 scaling is sharp for gamma-regular boundaries; the L1 bound is
    // one-sided (oscillation can cancel below it, e.g. axis-aligned squares).
    const bool ok1 = f1.slope <= want1 + 0.15;
    const bool ok2 = std::abs(f2.slope - want2) <= 0.10;
    res.status = (ok1 && ok2) ? Status::pass : Status::fail;
    return res;
}

CheckResult run_fchar(Scenario& sc) {
    CheckResult res;
    res.name = "fchar";
    const double p = sc.config().p > 0.0 ? sc.config().p : 1.6;
    if (!(p >= 1.0 && p <= 2.0)) throw ConfigError("run_fchar: p must lie in [1,2]");
    res.details["p"] = p;

    if (p == 2.0) {
        // Plancherel case: full-spectrum L2 equals the physical L2 = |E|^{1/2}.
        const double lhs_full = lp_norm(sc.spectrum(), 2.0, {}, sc.exec());
        const double phys = lp_norm(sc.indicator(), 2.0, {}, sc.exec());
        const double rel = std::abs(lhs_full - phys) / phys;
        const double rhs = sc.area() + fchar_integral(sc.profile(), p, 2.0 * sc.grid().spacing()).value;
        res.details["plancherel_rel_error"] = rel;
        res.details["lhs"] = lhs_full;
        res.details["rhs"] = rhs;
        res.status = (rel < 1e-8 && lhs_full <= rhs) ? Status::pass : Status::fail;
        return res;
    }

    const auto evaluate = [&](Scenario& s) {
        const double lhs = lp_norm(s.spectrum(), p, s.half_nyquist(), s.exec());
        const DyadicIntegral integ = fchar_integral(s.profile(), p, 2.0 * s.grid().spacing());
        return std::tuple{lhs, s.area() + integ.value, integ.divergent_trend};
    };
    const auto [lhs, rhs, divergent] = evaluate(sc);
    const auto [lhs2, rhs2, divergent2] = evaluate(sc.coarser(2));
    const double ratio = lhs / rhs, ratio2 = lhs2 / rhs2;
    res.details["lhs"] = lhs;
    res.details["rhs"] = rhs;
    res.details["ratio"] = ratio;
    res.details["ratio_at_half_resolution"] = ratio2;
    res.details["divergent_trend"] = divergent;

    if (divergent) {
        // Truncation explains a finite LHS; attach the octave table.
        nlohmann::ordered_json octj = nlohmann::ordered_json::array();
        for (const auto& [o, v] : octave_power_increments(sc.spectrum(), p, sc.half_nyquist(), sc.exec()))
            octj.push_back({{"octave", o}, {"power_increment", v}});
        res.details["octave_increments"] = octj;
        res.status = std::isfinite(ratio) ? Status::flag : Status::fail;
        return res;
    }
    const bool stable = std::abs(ratio - ratio2) <= 0.25 * ratio2;
    res.details["stable_under_doubling"] = stable;
    res.status = (std::isfinite(ratio) && stable) ? Status::pass : Status::fail;
    return res;
}

namespace {

struct SobolevPieces {
    std::vector<double> sq_p0, sq_p1; // ||(P_k chi)^2||_{p0/p1} per k
    ScalarField square_fn;
    double low_weak = 0.0;
};

SobolevPieces sobolev_pieces(Scenario& sc, double s, double p0, double p1) {
    SobolevPieces out;
    const Spectrum& fhat = sc.spectrum();
    const PhiFunction& phi = sc.phi();
    const int k_max = max_projection_index(fhat.spec);
    out.square_fn = make_field(fhat.spec);
    for (int k = 1; k <= k_max; ++k) {
        const ScalarField piece = project_k(fhat, phi, k, sc.exec());
        out.sq_p0.push_back(std::pow(lp_norm(piece, 2.0 * p0, {}, sc.exec()), 2.0));
        out.sq_p1.push_back(std::pow(lp_norm(piece, 2.0 * p1, {}, sc.exec()), 2.0));
        const double w = std::exp2(s * k);
        for (std::size_t i = 0; i < out.square_fn.values.size(); ++i) {
            const double t = w * piece.values[i];
            out.square_fn.values[i] += t * t;
        }
    }
    for (auto& v : out.square_fn.values) v = std::sqrt(v);
    const ScalarField low = project_low(fhat, phi, s, sc.exec());
    out.low_weak = lorentz_quasinorm(low, sc.config().q, kInf);
    return out;
}

} // namespace

CheckResult run_sobolev_weak(Scenario& sc) {
    CheckResult res;
    res.name = "sobolev_weak";
    const double q = sc.config().q;
    if (!(q > 1.0) || std::isinf(q)) throw ConfigError("run_sobolev_weak: q must lie in (1, inf)");
    const double s = sc.sobolev_s();
    double p0 = sc.config().p0, p1 = sc.config().p1;
    if (p0 < 0.0) p0 = q;
    // Midpoint of the admissible interval (1/2, q/2): strictly inside for
    // every q > 1, and it keeps the upper-block tail a healthy geometric
    // series (2 p1 near q makes the certificate tail nearly critical).
    if (p1 < 0.0) p1 = 0.25 * (1.0 + q);
    if (!(1.0 < 2.0 * p1 && 2.0 * p1 < q && q < 2.0 * p0))
        throw ConfigError("run_sobolev_weak: split must satisfy 1 < 2 p1 < q < 2 p0, got p0 = " +
                          format_double(p0) + ", p1 = " + format_double(p1));
    res.details["q"] = q;
    res.details["s"] = s;
    res.details["p0"] = p0;
    res.details["p1"] = p1;
    res.details["gamma"] = sc.gamma();

    const SobolevPieces fine = sobolev_pieces(sc, s, p0, p1);
    const double sq_weak = lorentz_quasinorm(fine.square_fn, q, kInf);
    res.details["square_fn_weak_norm"] = sq_weak;
    res.details["low_weak_norm"] = fine.low_weak;
    res.details["low_vs_area_ratio"] = fine.low_weak / std::pow(sc.area(), 1.0 / q);

    Scenario& half = sc.coarser(2);
    const SobolevPieces coarse = sobolev_pieces(half, s, p0, p1);
    const double sq_weak_half = lorentz_quasinorm(coarse.square_fn, q, kInf);
    const double ratio = sq_weak / sq_weak_half;
    const bool stable = ratio < 2.0 && ratio > 0.5;
    res.details["square_fn_weak_norm_half_resolution"] = sq_weak_half;
    res.details["stable_under_doubling"] = stable;

    // Two-block certificate: lambda = 2^t on a half-octave grid, N from
    // 2^{Ns} ~ lambda (best neighbouring integer); above the natural band N
    // pins at k_max - 2, where the product drifts by only lambda^{q - 2 p1}.
    // The p1 tail is continued geometrically past the resolvable band.
    const int k_max = static_cast<int>(fine.sq_p0.size());
    std::vector<double> w0(static_cast<std::size_t>(k_max)), w1(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        w0[static_cast<std::size_t>(k - 1)] = std::exp2(2.0 * s * k) * fine.sq_p0[static_cast<std::size_t>(k - 1)];
        w1[static_cast<std::size_t>(k - 1)] = std::exp2(2.0 * s * k) * fine.sq_p1[static_cast<std::size_t>(k - 1)];
    }
    std::vector<double> prefix0(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int k = 1; k <= k_max; ++k)
        prefix0[static_cast<std::size_t>(k)] = prefix0[static_cast<std::size_t>(k - 1)] + w0[static_cast<std::size_t>(k - 1)];
    const std::vector<double> suffix1 = suffix_sums_with_tail(w1);

    // Natural window: lambda_N = 2^{Ns} inverts the N relation exactly. The
    // uniformity diagnostic (product slope) lives here; beyond it N pins at
    // k_max - 2 and the product drifts structurally by lambda^{q - 2 p1}
    // toward the reported single constant.
    std::vector<double> nat_lambda, nat_product, log2_lambda, log2_product;
    double c_max = 0.0;
    const auto emit = [&](double t, int N, bool natural) {
        const double lambda = std::exp2(t);
        const double b0 = prefix0[static_cast<std::size_t>(N)];
        const double b1 = suffix1[static_cast<std::size_t>(N)];
        const double cert =
            std::pow(lambda, -2.0 * p0) * std::pow(b0, p0) + std::pow(lambda, -2.0 * p1) * std::pow(b1, p1);
        const double product = cert * std::pow(lambda, q);
        log2_lambda.push_back(t);
        log2_product.push_back(std::log2(product));
        if (natural) {
            nat_lambda.push_back(t);
            nat_product.push_back(std::log2(product));
        }
        c_max = std::max(c_max, product);
    };
    for (int N = 1; N <= k_max - 2; ++N) emit(s * N, N, true);
    const double t_hi = std::max(s * (k_max - 2), s + 6.0);
    for (double t = s * (k_max - 2) + 0.25; t <= t_hi + 0.249; t += 0.25)
        emit(t, k_max - 2, false); // pinned extension toward the single-C span
    const double slope = slope_of(nat_lambda, nat_product);
    const double octaves = log2_lambda.back() - log2_lambda.front();
    const bool cert_ok = std::abs(slope) <= 0.2 && octaves >= 6.0;
    nlohmann::ordered_json prods = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < log2_lambda.size(); ++i)
        prods.push_back({log2_lambda[i], log2_product[i]});
    res.details["certificate"] = {{"octaves", octaves},
                                  {"constant", c_max},
                                  {"product_slope", slope},
                                  {"natural_octaves", nat_lambda.back() - nat_lambda.front()},
                                  {"lambda_count", log2_lambda.size()},
                                  {"log2_products", prods}};
    res.status = (stable && cert_ok) ? Status::pass : Status::fail;
    return res;
}

CheckResult run_bessel_oracle(Scenario& sc) {
    CheckResult res;
    res.name = "bessel_oracle";
    const auto* disk = std::get_if<Disk>(&sc.config().shape);
    if (!disk) throw ConfigError("run_bessel_oracle: scenario shape must be a disk");
    const double R = disk->radius;
    const Spectrum& s = sc.spectrum();
    const GridSpec g = sc.grid();
    const double nyq = sc.half_nyquist().r_max;
    const int n = g.n;

    const auto at = [&](int m0, int m1) {
        return s.values[static_cast<std::size_t>(m0 + n / 2) * n + static_cast<std::size_t>(m1 + n / 2)];
    };

    // Zero frequency: area.
    const double area_err = std::abs(at(0, 0).real() - std::numbers::pi * R * R) / (std::numbers::pi * R * R);
    res.details["area_rel_error"] = area_err;

    // Rays (1,0) and (1,1): sup |FFT - closed form| over the band, normalized
    // by the band's closed-form scale (pointwise quotients blow up at the
    // transform's zeros). The per-octave envelope-normalized table is
    // reported too; its top octaves carry the irreducible fold-back of the
    // raster's super-Nyquist spectrum.
    double worst_ray = 0.0;
    {
        const int o_lo = 1, o_hi = static_cast<int>(std::floor(std::log2(nyq))) - 1;
        double band_diff = 0.0, band_exact = 0.0;
        nlohmann::ordered_json octj = nlohmann::ordered_json::array();
        for (int o = o_lo; o <= o_hi; ++o) {
            double max_diff = 0.0, max_exact = 0.0;
            const auto sample = [&](double rad, std::complex<double> val) {
                if (rad < std::exp2(o) || rad >= std::exp2(o + 1) || rad < 2.0 || rad > nyq) return;
                const double exact = disk_indicator_transform(R, rad);
                max_diff = std::max(max_diff, std::abs(std::abs(val) - std::abs(exact)));
                max_exact = std::max(max_exact, std::abs(exact));
            };
            for (int j = 1; j < n / 2; ++j) {
                sample(j / g.box_length, at(0, j));
                sample(std::numbers::sqrt2 * j / g.box_length, at(j, j));
            }
            if (max_exact > 0.0)
                octj.push_back({{"octave", o}, {"sup_error_vs_octave_envelope", max_diff / max_exact}});
            band_diff = std::max(band_diff, max_diff);
            band_exact = std::max(band_exact, max_exact);
        }
        worst_ray = band_diff / band_exact;
        res.details["ray_rel_error_by_octave"] = octj;
    }
    res.details["ray_rel_error"] = worst_ray;

    // Envelope decay: per-octave maxima over the full lattice, fitted against
    // the radius where each maximum is attained (the argmax drifts inside the
    // octave, so the octave index alone biases the exponent).
    std::vector<double> oct_x, oct_y;
    {
        const int o_hi = static_cast<int>(std::floor(std::log2(nyq))) - 1;
        std::vector<double> omax(static_cast<std::size_t>(o_hi) + 1, 0.0);
        std::vector<double> oarg(static_cast<std::size_t>(o_hi) + 1, 0.0);
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            const double rad = frequency_radius(g, i);
            if (rad < 1.0 || rad > nyq) continue;
            const int o = static_cast<int>(std::floor(std::log2(rad)));
            if (o < 0 || o > o_hi) continue;
            const double mag = std::abs(s.values[static_cast<std::size_t>(i)]);
            if (mag > omax[static_cast<std::size_t>(o)]) {
                omax[static_cast<std::size_t>(o)] = mag;
                oarg[static_cast<std::size_t>(o)] = rad;
            }
        }
        // Octaves below |xi| = 8 are preasymptotic for J1 (the closed form's
        // own octave-max statistic fits -1.50 only from the third octave),
        // and the two octaves under half-Nyquist carry fold-back inflation;
        // the fit uses the clean band between.
        for (int o = 3; o <= o_hi - 2; ++o) {
            oct_x.push_back(std::log2(oarg[static_cast<std::size_t>(o)]));
            oct_y.push_back(std::log2(omax[static_cast<std::size_t>(o)]));
        }
        res.details["envelope_fit_octaves"] = {3, o_hi - 2};
    }
    const double envelope_slope = slope_of(oct_x, oct_y);
    res.details["envelope_decay_exponent"] = envelope_slope;

    // Log-growth of the truncated critical norm: octave increments of
    // |hat chi|^{4/3} within +-20% of their median beyond the first octaves.
    const auto incr = octave_power_increments(s, 4.0 / 3.0, sc.half_nyquist(), sc.exec());
    std::vector<double> tail;
    for (const auto& [o, v] : incr)
        if (o >= 2) tail.push_back(v);
    std::vector<double> sorted = tail;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    double worst_dev = 0.0;
    for (double v : tail) worst_dev = std::max(worst_dev, std::abs(v - median) / median);
    res.details["l43_octave_increment_max_dev"] = worst_dev;

    const bool ok = worst_ray < 0.02 && std::abs(envelope_slope + 1.5) <= 0.05 && area_err < 0.005 &&
                    worst_dev <= 0.20;
    res.status = ok ? Status::pass : Status::fail;
    return res;
}

CheckResult run_phi_certification(Scenario& sc) {
    CheckResult res;
    res.name = "phi_certification";
    const PhiFunction& phi = sc.phi();
    const auto& c = phi.constants();
    res.details["moment_order"] = phi.moment_order();
    res.details["C1"] = c.c1;
    res.details["C2"] = c.c2;
    res.details["C1_quartic"] = c.c1_quartic;
    res.details["C2_quartic"] = c.c2_quartic;
    res.details["phi_at_zero"] = phi.g(0.0);

    const PartitionConstants dilated = certify_partition(phi, 2.0);
    const double dil_dev =
        std::max(std::abs(dilated.c1 - c.c1) / c.c1, std::abs(dilated.c2 - c.c2) / c.c2);
    res.details["dilation_invariance_rel_dev"] = dil_dev;

    double worst_moment = 0.0;
    const int beta_max = (1 << phi.moment_order()) - 1;
    nlohmann::ordered_json moments = nlohmann::ordered_json::array();
    for (const auto& e : moment_check(phi, beta_max)) {
        moments.push_back({{"beta", {e.b1, e.b2}}, {"magnitude", e.magnitude}});
        worst_moment = std::max(worst_moment, e.magnitude);
    }
    res.details["moment_table"] = moments;
    res.details["worst_moment"] = worst_moment;

    const MikhlinReport mik = mikhlin_check(phi, sc.sobolev_s(), 50, sc.config().seed + 2027);
    double worst_spread = 0.0;
    nlohmann::ordered_json mikj = nlohmann::ordered_json::array();
    for (const auto& row : mik.rows) {
        mikj.push_back({{"dual", row.dual}, {"alpha", {row.b1, row.b2}}, {"spread", row.spread},
                        {"octave_max", row.octave_max}});
        worst_spread = std::max(worst_spread, row.spread);
    }
    res.details["mikhlin_table"] = mikj;
    res.details["mikhlin_worst_spread"] = worst_spread;

    const bool ok = std::abs(phi.g(0.0)) < 1e-10 && worst_moment < 1e-6 && c.c1 > 0.0 && c.c1_quartic > 0.0 &&
                    dil_dev < 1e-8 && worst_spread < 10.0;
    res.status = ok ? Status::pass : Status::fail;
    return res;
}

CheckResult run_boundary_fit(Scenario& sc) {
    CheckResult res;
    res.name = "boundary_fit";
    const BoundaryProfile& prof = sc.profile();
    res.details["gamma_hat"] = prof.gamma_hat;
    res.details["gamma_stderr"] = prof.gamma_stderr;
    res.details["fit_window"] = {prof.fit_i_min, prof.fit_i_max};
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < prof.volume.size(); ++i)
        if (prof.volume[i] < prof.volume[i + 1]) monotone = false;
    res.details["volume_monotone"] = monotone;
    bool gamma_ok = prof.gamma_hat > 0.0 && prof.gamma_hat < 2.0;
    if (sc.config().expected_gamma) {
        res.details["gamma_expected"] = *sc.config().expected_gamma;
        gamma_ok = gamma_ok && std::abs(prof.gamma_hat - *sc.config().expected_gamma) <= 0.06;
    }
    res.status = (monotone && gamma_ok) ? Status::pass : Status::fail;
    return res;
}

CheckResult run_packet(Scenario& sc, DyadicReport* table) {
    CheckResult res;
    res.name = "packet";
    const double p = 2.0;
    DyadicReport rep = verify_packet(sc.indicator(), sc.phi(), p, 3, 64, sc.profile(), sc.exec());
    if (table) *table = rep;
    double lo = 1e300, hi = 0.0;
    for (const auto& name : {"ratio_phi", "ratio_pk"})
        for (double v : rep.column(name)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    res.details["ratio_min"] = lo;
    res.details["ratio_max"] = hi;
    for (const auto& f : rep.fits)
        if (f.column == "log2_pk_norm") {
            res.details["pk_l2_slope"] = f.line.slope;
            res.details["pk_l2_slope_expected"] = -0.5 * (2.0 - sc.gamma());
        }
    res.status = (std::isfinite(hi) && hi / lo < 20.0) ? Status::pass : Status::fail;
    return res;
}

namespace {

void write_tsv(const std::filesystem::path& path, const std::vector<std::pair<double, double>>& series) {
    std::string out;
    for (const auto& [x, y] : series) out += format_double(x) + "\t" + format_double(y) + "\n";
    atomic_write_text(path, out);
}

} // namespace

int verify_all(Scenario& sc, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir / "plotdata");
    nlohmann::ordered_json report;
    report["scenario"] = sc.config().name;
    report["grid"] = {{"n", sc.config().n}, {"L", sc.config().box_length}};
    report["seed"] = sc.config().seed;

    std::vector<CheckResult> results;
    const auto guard = [&](auto&& fn) {
        using Fn = decltype(fn);
        try {
            results.push_back(std::forward<Fn>(fn)());
        } catch (const ConfigError&) {
            throw; // config errors abort the run (exit 2)
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = "exception";
            r.status = Status::fail;
            r.details["error"] = e.what();
            results.push_back(std::move(r));
        }
    };

    guard([&] { return run_phi_certification(sc); });
    guard([&] { return run_boundary_fit(sc); });
    DyadicReport packet_table, blocks_table;
    guard([&] { return run_packet(sc, &packet_table); });
    guard([&] { return run_l1_l2_blocks(sc, &blocks_table); });
    guard([&] { return run_weak_norm(sc); });
    guard([&] { return run_fchar(sc); });
    guard([&] { return run_sobolev_weak(sc); });
    if (std::holds_alternative<Disk>(sc.config().shape)) guard([&] { return run_bessel_oracle(sc); });

    int npass = 0, nflag = 0, nfail = 0;
    report["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        report["checks"].push_back({{"name", r.name}, {"status", to_string(r.status)}, {"details", r.details}});
        if (r.status == Status::pass) ++npass;
        else if (r.status == Status::flag) ++nflag;
        else ++nfail;
    }
    report["summary"] = {{"pass", npass}, {"flag", nflag}, {"fail", nfail}};

    atomic_write_text(out_dir / "report.json", report.dump(2) + "\n");
    atomic_write_text(out_dir / "boundary_profile.csv", boundary_profile_csv(sc.profile()));
    if (!packet_table.k.empty()) atomic_write_text(out_dir / "packet.csv", packet_table.csv());
    if (!blocks_table.k.empty()) atomic_write_text(out_dir / "l1_l2_blocks.csv", blocks_table.csv());

    // Plot series: boundary law, per-k block norms, certificate products.
    std::vector<std::pair<double, double>> law;
    for (std::size_t i = 0; i < sc.profile().delta.size(); ++i)
        law.emplace_back(std::log2(sc.profile().delta[i]), std::log2(sc.profile().volume[i]));
    write_tsv(out_dir / "plotdata" / "boundary_law.tsv", law);
    if (!blocks_table.k.empty()) {
        std::vector<std::pair<double, double>> l2s;
        const auto& l2 = blocks_table.column("l2_block");
        for (std::size_t i = 0; i < l2.size(); ++i)
            l2s.emplace_back(blocks_table.k[i], std::log2(l2[i]));
        write_tsv(out_dir / "plotdata" / "l2_blocks.tsv", l2s);
    }
    for (const auto& r : results) {
        if (!r.details.contains("certificate")) continue;
        std::vector<std::pair<double, double>> prods;
        for (const auto& xy : r.details["certificate"]["log2_products"])
            prods.emplace_back(xy[0].get<double>(), xy[1].get<double>());
        write_tsv(out_dir / "plotdata" / (r.name + "_products.tsv"), prods);
    }

    return nfail == 0 ? 0 : 1;
}

} // namespace charfun
