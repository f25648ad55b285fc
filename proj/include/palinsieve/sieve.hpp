#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "palinsieve/numeric.hpp"

namespace palinsieve
{
    struct Factorization
    {
        std::vector<std::pair<BigInt, u64>> factors;    // ascending primes

        u64 omega_total() const;    // Omega(n), with multiplicity
        // P^-(n); empty for n = 1 (taken as +infinity).
        std::optional<BigInt> smallest_prime() const;
        BigInt product() const;
    };

    struct FactorConfig
    {
        u64 trial_limit = 10000;
        int mr_rounds = 40;     // above 64 bits
    };

    bool is_prime_u64(u64 n);
    bool is_probable_prime(const BigInt& n, int rounds = 40);
    // Ascending (prime, exponent) pairs of n >= 1.
    std::vector<std::pair<u64, u64>> factorize_u64(u64 n, u64 trial_limit = 10000);
    Factorization factorize(const BigInt& n, const FactorConfig& cfg = {});

    // Delta_r = r + log(3/4 (1 + 3^-r)) / log 3.
    double delta_r(u64 r);
    // 4/21 - (1/Delta_6 + 1/100)
    double delta6_margin();

    struct SieveReport
    {
        u64 b = 10;
        BigInt x;
        u64 r = 6;
        u64 theta_inv = 21;
        BigInt z;
        BigInt total_pal;
        BigInt qualifying;
        double ratio = 0.0;
        std::optional<double> remainder_sum;
        double delta6_margin = 0.0;
    };

    struct CensusRow
    {
        BigInt n;
        u64 omega = 0;
        std::optional<BigInt> pminus;
        bool qualifies = false;
    };

    // Counts palindromes n <= x (all lengths) with Omega(n) <= r and
    // P^-(n) >= floor(x^{1/theta_inv}). rows, when given, receives every n.
    SieveReport census(u64 b, const BigInt& x, u64 r = 6, u64 theta_inv = 21,
                       std::vector<CensusRow>* rows = nullptr, const FactorConfig& cfg = {});

    struct HypothesisReport
    {
        BigInt D;                   // floor(x^{4/21})
        u64 total_star = 0;         // #P_b*(x)
        mpq_class remainder_exact;  // sum_{d<=D} |#P*(x,0,d) - g(d) #P*(x)|
        double remainder_sum = 0.0;
        double mertens_K = 0.0;     // max over the grid of prod (1-g(p))^-1 log u / log v
        double max_product = 0.0;   // max over the grid of prod (1-g(p))^-1
        u64 grid_points = 0;
        u64 prime_limit = 0;        // primes used stop below this
        bool prime_capped = false;
    };

    HypothesisReport hypothesis_check(u64 b, const BigInt& x, u64 prime_cap = 10000000);
}
