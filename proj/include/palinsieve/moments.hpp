#pragma once

#include <map>
#include <vector>

#include "palinsieve/numeric.hpp"

namespace palinsieve
{
    // Largest K b^{2N} accepted by the coefficient routines.
    inline constexpr u64 kCoeffGuard = 100000000;

    // r(n; K, b) for n = 0..(b-1)K: ordered sums of K digits in [0, b).
    struct CompositionTable
    {
        u64 b = 2;
        u64 K = 1;
        std::vector<BigInt> values;
    };

    CompositionTable composition_table(u64 b, u64 K);
    BigInt r_exact(i64 n, u64 K, u64 b);
    // Alternating-sum closed form, kept as an independent cross-check of r_exact.
    BigInt r_inclusion_exclusion(i64 n, u64 K, u64 b);
    // Gaussian main term for r(n; K, b) / b^K.
    double r_gauss(double n, u64 K, u64 b);
    // max_n |r(n;K,b)/b^K - r_gauss(n;K,b)| * b * K^{3/2}.
    double composition_error_scaled(u64 b, u64 K);

    // Half of a symmetric composition row, advanced one digit block at a time.
    class CompositionRow
    {
    public:
        explicit CompositionRow(u64 b);
        // Row for K blocks; starts at K = 0 (the constant 1).
        void advance();
        u64 blocks() const { return K_; }
        u64 degree() const { return (b_ - 1) * K_; }
        const BigInt& at(i64 n) const;

    private:
        u64 b_;
        u64 K_ = 0;
        std::vector<BigInt> half_, scratch_;
        BigInt zero_;
    };

    // Mirror positions b^m + b^{2N-m}, m = 1..N-1.
    std::vector<u64> mirror_positions(u64 b, u64 N);

    struct CoeffVector
    {
        u64 b = 2;
        u64 N = 2;
        u64 K = 1;
        std::map<u64, BigInt> coeffs;   // nonzero a_l only
    };

    CoeffVector coeff_vector(u64 b, u64 N, u64 K);
    BigInt sum_of_squares(const CoeffVector& cv);

    // Integral of Phi_N^{2K} over [0, 1), exact.
    BigInt moment_exact(u64 b, u64 N, u64 K);
    // moment_exact for K = 1..Kmax, sharing composition rows.
    std::vector<BigInt> moment_exact_sweep(u64 b, u64 N, u64 Kmax);

    // Uniform grid average of Phi_N^{2K}; grid >= 4 K b^{2N}.
    WideReal moment_quadrature(u64 b, u64 N, u64 K, u64 grid);
    // The same average on one grid for K = 1..Kmax; grid >= 4 Kmax b^{2N}.
    std::vector<WideReal> moment_quadrature_sweep(u64 b, u64 N, u64 Kmax, u64 grid);

    // b^{2(K-1)N + 2}
    BigInt moment_bound_base(u64 b, u64 N, u64 K);
    // (moment / bound_base)^{1/(2N)} - 1
    double moment_ratio(u64 b, u64 N, u64 K);

    // Sum over q <= Q and units h mod q of Phi_N^{2K}(h/q + beta).
    WideReal farey_moment_sum(u64 b, u64 N, u64 K, u64 Q, const Angle& beta);
    // log of (Q^2 + K b^{2N}) b^{2(K-1)N+2} (1 + c/sqrt K + c b^2/K)^{2N}
    double farey_bound_log(u64 b, u64 N, u64 K, u64 Q, double c);
    // Smallest c >= 0 for which the bound above covers `sum`.
    double farey_required_c(u64 b, u64 N, u64 K, u64 Q, const WideReal& sum);
}
