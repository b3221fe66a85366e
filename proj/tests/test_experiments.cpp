// test_experiments.cpp -- scenario configs, check wiring, determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "charfun/experiments.hpp"
#include "charfun/io.hpp"

using namespace charfun;

namespace {

nlohmann::json disk_json(int n) {
    return nlohmann::json{{"name", "disk"},
                          {"shape", {{"type", "disk"}, {"center", {0.5, 0.5}}, {"radius", 0.25}}},
                          {"grid", {{"n", n}, {"L", 1.0}}},
                          {"seed", 7}};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("defaults fill in") {
        const ScenarioConfig cfg = parse_config(disk_json(256));
        CHECK(cfg.n == 256);
        CHECK(cfg.q == 2.0);
        CHECK(!cfg.gamma_override);
        CHECK(cfg.raster.subsamples == 5);
    }

    SUBCASE("gamma accepts either a number or the string fit") {
        auto j = disk_json(256);
        j["exponents"] = {{"gamma", "fit"}};
        CHECK(!parse_config(j).gamma_override);
        j["exponents"] = {{"gamma", 1.25}};
        CHECK(parse_config(j).gamma_override == 1.25);
    }

    SUBCASE("malformed configs raise ConfigError") {
        CHECK_THROWS_AS(parse_config(nlohmann::json{{"name", "x"}}), ConfigError); // no shape
        auto j = disk_json(256);
        j["shape"]["type"] = "pentagon";
        CHECK_THROWS_AS(parse_config(j), ConfigError);
        auto j2 = disk_json(100); // non-power-of-two n caught at grid build
        const ScenarioConfig cfg = parse_config(j2);
        Scenario sc(cfg);
        CHECK_THROWS_AS(sc.grid(), ConfigError);
    }
}

TEST_CASE("scenario plumbing") {
    Scenario sc(parse_config(disk_json(256)));

    SUBCASE("area and critical exponents") {
        CHECK(sc.area() == doctest::Approx(std::numbers::pi / 16.0).epsilon(0.02));
        CHECK(sc.gamma() == doctest::Approx(1.0).epsilon(0.06));
        CHECK(sc.critical_p() == doctest::Approx(4.0 / 3.0).epsilon(0.03));
        CHECK(sc.sobolev_s() == doctest::Approx(0.5).epsilon(0.06));
    }

    SUBCASE("block norms cover k = 1..k_max and carry the low mass") {
        const auto& b = sc.block_norms();
        CHECK(b.k_max == 6);
        CHECK(b.l1.size() == 6);
        CHECK(b.l1_low > 0.0);
        for (double v : b.l1) CHECK(v > 0.0);
    }

    SUBCASE("coarser twin clamps its fit window") {
        Scenario& half = sc.coarser(2);
        CHECK(half.config().n == 128);
        CHECK_NOTHROW(half.profile());
    }
}

TEST_CASE("sobolev precondition enforcement") {
    auto j = disk_json(256);
    j["exponents"] = {{"q", 2.0}, {"p1", 1.2}}; // 2 p1 = 2.4 >= q
    Scenario sc(parse_config(j));
    CHECK_THROWS_AS(run_sobolev_weak(sc), ConfigError);
}

TEST_CASE("bessel oracle wants a disk") {
    auto j = disk_json(256);
    j["shape"] = {{"type", "axis_rect"}, {"corner", {0.3, 0.3}}, {"widths", {0.4, 0.4}}};
    Scenario sc(parse_config(j));
    CHECK_THROWS_AS(run_bessel_oracle(sc), ConfigError);
}

TEST_CASE("verify_all writes a deterministic report tree") {
    const auto dir = std::filesystem::temp_directory_path() / "charfun_exp_test";
    std::filesystem::remove_all(dir);

    Scenario a(parse_config(disk_json(512)));
    Scenario b(parse_config(disk_json(512)));
    const int rc1 = verify_all(a, dir / "r1");
    const int rc2 = verify_all(b, dir / "r2");
    CHECK(rc1 == rc2);

    SUBCASE("byte-identical reports") {
        const std::string s1 = slurp(dir / "r1" / "report.json");
        CHECK(!s1.empty());
        CHECK(s1 == slurp(dir / "r2" / "report.json"));
    }

    SUBCASE("emits the promised files") {
        CHECK(std::filesystem::exists(dir / "r1" / "boundary_profile.csv"));
        CHECK(std::filesystem::exists(dir / "r1" / "packet.csv"));
        CHECK(std::filesystem::exists(dir / "r1" / "l1_l2_blocks.csv"));
        CHECK(std::filesystem::exists(dir / "r1" / "plotdata" / "boundary_law.tsv"));
        const auto j = nlohmann::json::parse(slurp(dir / "r1" / "report.json"));
        CHECK(j.contains("checks"));
        CHECK(j["summary"].contains("pass"));
    }
}

TEST_CASE("gamma override negative control fails the certificates at small n") {
    auto j = disk_json(512);
    j["exponents"] = {{"gamma", 1.9}};
    Scenario sc(parse_config(j));
    CHECK(run_weak_norm(sc).status == Status::fail);
    CHECK(run_sobolev_weak(sc).status == Status::fail);
}
