// charfun_main.cpp -- command line front end.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "charfun/experiments.hpp"
#include "charfun/io.hpp"

using namespace charfun;

namespace {

struct GlobalArgs {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

Scenario make_scenario(const GlobalArgs& g) {
    ScenarioConfig cfg = load_config(g.config);
    if (g.seed) cfg.seed = *g.seed;
#ifdef _OPENMP
    if (g.threads > 0) omp_set_num_threads(g.threads);
#endif
    return Scenario(cfg);
}

void write_check(const CheckResult& r, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["status"] = to_string(r.status);
    j["details"] = r.details;
    atomic_write_text(out_dir / (r.name + ".json"), j.dump(2) + "\n");
    std::printf("%s: %s\n", r.name.c_str(), to_string(r.status).c_str());
}

int status_code(const CheckResult& r) { return r.status == Status::fail ? 1 : 0; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier integrability and Lorentz-Sobolev regularity checks for indicator functions "
                 "of planar domains"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalArgs g;
    app.add_option("--config", g.config, "scenario config (JSON)");
    app.add_option("--out", g.out, "output directory");
    auto* seed_opt = app.add_option("--seed", "override config seed (u64)");
    app.add_option("--threads", g.threads, "OpenMP thread count (0 = default)");

    const char* subs[] = {"rasterize",  "boundary-profile", "gamma-fit",  "spectrum",
                          "decay-fit",  "weak-norm",        "fchar",      "lp-decompose",
                          "phi-check",  "sobolev-weak",     "bessel-oracle", "verify-all"};
    for (const char* name : subs) app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) g.seed = seed_opt->as<std::uint64_t>();

    const std::string sub = app.get_subcommands().front()->get_name();
    const std::filesystem::path out_dir = g.out;

    try {
        if (g.config.empty()) throw ConfigError("--config is required");
        Scenario sc = make_scenario(g);
        std::filesystem::create_directories(out_dir);

        if (sub == "rasterize") {
            write_field(out_dir / "indicator.cfl", sc.indicator());
            nlohmann::ordered_json j{{"n", sc.config().n}, {"area", sc.area()}};
            atomic_write_text(out_dir / "rasterize.json", j.dump(2) + "\n");
            if (const auto* ks = std::get_if<KochSnowflake>(&sc.config().shape))
                atomic_write_text(out_dir / "polygon.csv",
                                  polygon_csv(koch_polygon(ks->center, ks->circumradius, ks->depth)));
            else if (const auto* pu = std::get_if<PolygonUnion>(&sc.config().shape))
                atomic_write_text(out_dir / "polygon.csv", polygon_csv(*pu));
            std::printf("rasterize: area = %s\n", format_double(sc.area()).c_str());
            return 0;
        }
        if (sub == "boundary-profile") {
            atomic_write_text(out_dir / "boundary_profile.csv", boundary_profile_csv(sc.profile()));
            std::printf("boundary-profile: %zu blocks, gamma_hat = %s\n", sc.profile().delta.size(),
                        format_double(sc.profile().gamma_hat).c_str());
            return 0;
        }
        if (sub == "gamma-fit") {
            const CheckResult r = run_boundary_fit(sc);
            write_check(r, out_dir);
            return status_code(r);
        }
        if (sub == "spectrum") {
            write_spectrum(out_dir / "spectrum.cfl", sc.spectrum());
            atomic_write_text(out_dir / "spectrum_distribution.csv",
                              distribution_csv(distribution(sc.spectrum(), sc.half_nyquist())));
            std::printf("spectrum: written (n = %d)\n", sc.config().n);
            return 0;
        }
        if (sub == "decay-fit" || sub == "bessel-oracle") {
            const CheckResult r = run_bessel_oracle(sc);
            write_check(r, out_dir);
            return status_code(r);
        }
        if (sub == "weak-norm") {
            const CheckResult r = run_weak_norm(sc);
            write_check(r, out_dir);
            return status_code(r);
        }
        if (sub == "fchar") {
            const CheckResult r = run_fchar(sc);
            write_check(r, out_dir);
            return status_code(r);
        }
        if (sub == "lp-decompose") {
            DyadicReport packet, blocks;
            const CheckResult rp = run_packet(sc, &packet);
            const CheckResult rb = run_l1_l2_blocks(sc, &blocks);
            atomic_write_text(out_dir / "packet.csv", packet.csv());
            atomic_write_text(out_dir / "l1_l2_blocks.csv", blocks.csv());
            atomic_write_text(out_dir / "packet.json", packet.json().dump(2) + "\n");
            atomic_write_text(out_dir / "l1_l2_blocks.json", blocks.json().dump(2) + "\n");
            write_check(rp, out_dir);
            write_check(rb, out_dir);
            return status_code(rp) | status_code(rb);
        }
        if (sub == "phi-check") {
            const CheckResult r = run_phi_certification(sc);
            atomic_write_text(out_dir / "psi0hat_profile.csv", sc.phi().psi0hat().profile().csv());
            write_check(r, out_dir);
            return status_code(r);
        }
        if (sub == "sobolev-weak") {
            const CheckResult r = run_sobolev_weak(sc);
            write_check(r, out_dir);
            return status_code(r);
        }
        if (sub == "verify-all") {
            const int rc = verify_all(sc, out_dir);
            std::printf("verify-all: %s (report at %s)\n", rc == 0 ? "pass" : "FAIL",
                        (out_dir / "report.json").c_str());
            return rc;
        }
        throw ConfigError("unknown subcommand " + sub);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
