// experiments.hpp -- scenario configs and the theorem-level checks the CLI
// drives: weak-norm certificates, dyadic block slopes, the Fourier-norm
// bound, the Lorentz-Sobolev certificate, and the disk sharpness oracle.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "charfun/boundary.hpp"
#include "charfun/littlewood_paley.hpp"
#include "charfun/shapes.hpp"

namespace charfun {

struct ScenarioConfig {
    std::string name = "scenario";
    Shape shape;
    int n = 2048;
    double box_length = 1.0;
    RasterOptions raster;
    int phi_moment_order = 1;
    double phi_r_max = 256.0;
    int phi_nodes = 2048;
    std::optional<double> gamma_override; // empty: fit from the profile
    double p = -1.0;                      // -1: critical 2d/(2d-gamma)
    double q = 2.0;
    double s = -1.0;                      // -1: critical (d-gamma)/q
    double p0 = -1.0, p1 = -1.0;          // -1: default split
    int fit_i_min = 3, fit_i_max = -1;
    std::uint64_t seed = 0;
    std::optional<double> expected_gamma; // optional oracle value for verify-all
};

ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);

enum class Status { pass, flag, fail };
std::string to_string(Status s);

struct CheckResult {
    std::string name;
    Status status = Status::pass;
    nlohmann::ordered_json details;
};

// Lazily built pipeline shared by the checks; every product is cached, and
// coarser twins (n/2, n/4) can be spawned for resolution-doubling tests.
class Scenario {
  public:
    Scenario(ScenarioConfig cfg, Exec exec = Exec::parallel);

    const ScenarioConfig& config() const { return cfg_; }
    GridSpec grid() const;
    Exec exec() const { return exec_; }

    const ScalarField& indicator();
    const Spectrum& spectrum();
    const DistanceMap& distance_map();
    const BoundaryProfile& profile();
    const PhiFunction& phi();

    double gamma();          // override or fitted
    double critical_p();     // 2 dim / (2 dim - gamma)
    double sobolev_s();      // config s or (dim - gamma)/q
    double area();           // raster area of E

    Annulus half_nyquist() const;

    // Per-k L1/L2 norms of g^2(2^{-k} xi) hat chi over the half-Nyquist ball.
    struct BlockNorms {
        std::vector<double> l1, l2; // k = 1..k_max
        double l1_low = 0.0;        // sum of the k <= 0 blocks (geometric in k)
        int k_max = 0;
    };
    const BlockNorms& block_norms();

    Scenario& coarser(int factor); // cached twin at n / factor

  private:
    ScenarioConfig cfg_;
    Exec exec_;
    std::shared_ptr<const Psi0Hat> psi0hat_;
    std::optional<ScalarField> indicator_;
    std::optional<Spectrum> spectrum_;
    std::optional<DistanceMap> map_;
    std::optional<BoundaryProfile> profile_;
    std::optional<PhiFunction> phi_;
    std::optional<BlockNorms> blocks_;
    std::optional<double> area_;
    std::map<int, std::unique_ptr<Scenario>> coarser_;
};

// Critical weak norm of hat chi across resolutions (factor-2 stability),
// the two-term lambda certificate with 2^N ~ lambda^{-2/(2d-gamma)}, and
// the octave-increment table of the truncated strong norm.
CheckResult run_weak_norm(Scenario& sc);

// Fitted slopes of the per-k L1/L2 block norms against the boundary law
// exponents gamma/2 and -(2-gamma)/2.
CheckResult run_l1_l2_blocks(Scenario& sc, DyadicReport* table = nullptr);

// Fourier-norm bound: truncated ||hat chi||_p against |E| + the boundary
// integral.
CheckResult run_fchar(Scenario& sc);

// Lorentz-Sobolev check: square-function weak norm stability and the
// two-block certificate with 2^{Ns} ~ lambda.
CheckResult run_sobolev_weak(Scenario& sc);

// Sharpness on the disk: FFT vs closed-form transform, envelope decay
// exponent, log-growth of the truncated critical norm.
CheckResult run_bessel_oracle(Scenario& sc);

// Mother-function certification summary (partition constants, vanishing
// moments, multiplier derivative bounds) for the report.
CheckResult run_phi_certification(Scenario& sc);

// Boundary neighborhood profile + gamma fit (against expected_gamma when
// provided).
CheckResult run_boundary_fit(Scenario& sc);

// Boundary-packet ratios for the scenario shape.
CheckResult run_packet(Scenario& sc, DyadicReport* table = nullptr);

// Everything above; writes report.json, per-table CSVs and plotdata TSVs
// under out_dir. Returns overall exit status (0 pass/flag, 1 any fail).
int verify_all(Scenario& sc, const std::filesystem::path& out_dir);

} // namespace charfun
