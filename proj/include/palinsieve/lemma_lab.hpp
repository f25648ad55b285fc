#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "palinsieve/calibration.hpp"
#include "palinsieve/numeric.hpp"

namespace palinsieve
{
    using PointSet = std::vector<double>;

    // One inequality check. For explicit-constant lemmas passed means
    // lhs <= rhs (1 + 1e-9); ratio-form reports fill `ratio` and compare it
    // against a calibrated threshold instead.
    struct LemmaReport
    {
        std::string id;
        std::string inputs;
        double lhs = 0.0;
        double rhs = 0.0;
        bool passed = false;
        bool ratio_form = false;
        double ratio = 0.0;
    };

    inline constexpr double kLemmaTolerance = 1e-9;
    bool within(double lhs, double rhs);

    double star_discrepancy(const PointSet& ps);
    double discrepancy(const PointSet& ps);

    LemmaReport check_large_sieve(const std::vector<Angle>& points,
                                  const std::map<i64, std::complex<double>>& coeffs, double delta);

    enum class KhFunction
    {
        LINEAR,     // f(x) = x
        TENT,       // |x - 1/2|
        INDICATOR   // 1 on [0, d)
    };
    LemmaReport check_koksma_hlawka(const PointSet& ps, KhFunction f, double d = 0.5);

    LemmaReport check_erdos_turan(const PointSet& ps, u64 H);

    LemmaReport check_vinogradov(double A, double B, double theta, u64 q);

    enum class ErgodicFunction
    {
        ONE,
        PHI_B,          // phi_b(x) / b
        CLIPPED_CSC2    // min(4, csc^2(pi x))
    };
    LemmaReport check_ergodic_integral(ErgodicFunction f, u64 N, u64 b, u64 grid);

    LemmaReport check_weyl_product(const PointSet& ps, u64 b);

    // Bump f(x) = exp(-1 / (1 - (x/s)^2)) on |x| < s, s = mollifier_scale.
    // ||f^(k)||_1 for the bump with scale s.
    double bump_derivative_norm(u64 k, double scale);
    LemmaReport check_smooth_sum(u64 k, const Angle& alpha, double mollifier_scale);

    // phi_b(a (b^beta + b^{gamma+1})) phi_b(a (b^{beta+1} + b^gamma))
    //   <= b phi_b(||a (b^2 - 1) b^gamma|| / (b + 1))
    LemmaReport check_pairing(u64 b, const Angle& alpha, u64 beta, u64 gamma);
    // phi_b(a) <= b exp(-pi^2/6 (b^2 - 1) ||a||^2) for ||a|| <= 1/b.
    LemmaReport check_exponential_bound(u64 b, const Angle& a);
    // ||a|| >= delta, delta <= 2/(3b) implies phi_b(a) <= phi_b(delta).
    LemmaReport check_phi_monotone(u64 b, const Angle& a, const Angle& delta);

    // Seeded random suites; `instances` per lemma.
    struct SuiteOptions
    {
        u64 seed = 7;
        u64 instances = 100;
        std::string only;       // empty = every lemma
        double weyl_a_max = calibration::kWeylAMax;    // 0 disables the Weyl threshold
        double erdos_turan_max = calibration::kErdosTuranMax;
    };

    std::vector<std::string> lemma_ids();
    std::vector<LemmaReport> run_lemma_suite(const SuiteOptions& opt);
}
