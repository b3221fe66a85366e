// phi.hpp -- the special Littlewood-Paley function: phi = psihat_0 - psihat_0(2.)
// powered to phi^{2^N} (argument rescaled by 2^{-N} so the physical-side
// support stays inside the unit ball), its partition constants, vanishing
// moments, and the Mikhlin multiplier family built from it.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "charfun/bump.hpp"

namespace charfun {

struct PartitionConstants {
    double c1 = 0.0, c2 = 0.0;             // bounds of sum_k g^2(2^{-k} xi)
    double c1_quartic = 0.0, c2_quartic = 0.0; // same for g^4 (backs the dual multipliers)
};

class PhiFunction {
  public:
    PhiFunction(std::shared_ptr<const Psi0Hat> psi0hat, int moment_order);

    int moment_order() const { return moment_order_; }
    const Psi0Hat& psi0hat() const { return *psi0hat_; }

    // Working multiplier piece g(|xi|) = phi(2^{-N}|xi|)^{2^N}; g(0) = 0 with
    // all derivatives of order < 2^N vanishing at the origin.
    double g(double r) const;
    double g2(double r) const;
    double g4(double r) const;

    // sum_j g^4(2^{-j} r), bounded below away from r = 0 by c1_quartic.
    double quartic_sum(double r) const;

    const PartitionConstants& constants() const { return constants_; }

  private:
    friend PhiFunction build_phi(int moment_order, std::shared_ptr<const Psi0Hat> psi0hat);
    std::shared_ptr<const Psi0Hat> psi0hat_;
    int moment_order_ = 0;
    double scale_ = 1.0; // 2^{-N}
    PartitionConstants constants_;
};

// Constructs the evaluator and certifies the partition bounds; fails if the
// lower constant degenerates (bad bump/N combination, or r_max too small for
// the requested moment order). 0 <= N <= 4.
PhiFunction build_phi(int moment_order, std::shared_ptr<const Psi0Hat> psi0hat = nullptr);

// Min/max of sum_{k=-K}^{K} g^2(2^{-k} xi) (and the quartic analogue) over a
// dense log-spaced sample of the annulus [r_lo, 2 r_lo]; K large enough that
// boundary terms are < 1e-10.
PartitionConstants certify_partition(const PhiFunction& phi, double r_lo = 1.0, int samples = 2048);

// |integral x^beta g_check(x) dx| = |d^beta g(0)| / (2 pi)^{|beta|}, computed
// by mixed central differences at step 1e-2; all entries < 1e-6 for
// |beta| < 2^N.
struct MomentEntry {
    int b1 = 0, b2 = 0;
    double magnitude = 0.0;
};
std::vector<MomentEntry> moment_check(const PhiFunction& phi, int beta_max);

// Frequency multipliers of the refined Littlewood-Paley inequality:
//   m_k  = 2^{ks}  g^2(2^{-k} xi) (1+|xi|^2)^{-s/2}
//   m_k' = 2^{-ks} g^2(2^{-k} xi) (1+|xi|^2)^{s/2} / sum_j g^4(2^{-j} xi)
//   m_0' = 1 / sum_j g^4(2^{-j} xi)
struct Multiplier {
    const PhiFunction* phi = nullptr;
    int k = 0;
    double s = 0.0;
    enum class Kind { direct, dual, dual_low } kind = Kind::direct;

    double operator()(double r) const;
};

Multiplier multiplier_m(const PhiFunction& phi, int k, double s);
Multiplier multiplier_m_prime(const PhiFunction& phi, int k, double s);
Multiplier multiplier_m0_prime(const PhiFunction& phi);

// Low-pass symbol Phi_0(xi) = (1+|xi|^2)^{s/2} sum_{k<=0} g^4(2^{-k} xi),
// the k-sum truncated at term magnitude 1e-12.
double low_pass_symbol(const PhiFunction& phi, double s, double r);

// Random-sign Mikhlin certification: for 50 sign patterns and both multiplier
// families, the per-octave maxima of |xi|^{|alpha|} |d^alpha sum_k w_k m_k|
// over |alpha| <= 2 (= d/2 + 1 for d = 2), derivatives by finite differences
// with relative step 1e-3.
struct MikhlinReport {
    struct Row {
        bool dual = false;
        int b1 = 0, b2 = 0;
        std::vector<double> octave_max; // indexed by octave
        double spread = 0.0;            // max/min across octaves
    };
    std::vector<int> octaves;
    std::vector<Row> rows;
    int patterns = 0;
};
MikhlinReport mikhlin_check(const PhiFunction& phi, double s, int patterns = 50, std::uint64_t seed = 2027,
                            int octave_lo = 2, int octave_hi = 10);

} // namespace charfun
