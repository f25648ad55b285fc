#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "palinsieve/equidist.hpp"
#include "palinsieve/palindromes.hpp"
#include "palinsieve/parallel.hpp"

using namespace palinsieve;

namespace
{
    std::vector<u64> star_pals(u64 b, u64 x)
    {
        std::vector<u64> out;
        PalindromeStream s = enumerate({b, Filter::STAR}, x);
        while (s.next()) out.push_back(s.value_u64());
        return out;
    }

    // sup over prefixes, rebuilding the whole histogram at every prefix;
    // returns q * err.
    u64 brute_scaled(const std::vector<u64>& pals, u64 q)
    {
        u64 best = 0;
        for (std::size_t t = 0; t <= pals.size(); ++t)
        {
            std::vector<u64> c(q, 0);
            for (std::size_t i = 0; i < t; ++i) c[pals[i] % q]++;
            for (u64 a = 0; a < q; ++a)
            {
                const i64 d = i64(q * c[a]) - i64(t);
                best = std::max<u64>(best, u64(std::llabs(d)));
            }
        }
        return best;
    }
}

TEST_CASE("equidist examples")
{
    CHECK(equidist_error(2, 1000, 1) == 0.0);
    CHECK(equidist_error(2, 8, 3) == doctest::Approx(1.0));
    CHECK(equidist_error(2, 1, 5) == doctest::Approx(0.8));
    CHECK_THROWS_AS(equidist_error(2, 8, 0), DomainError);
}

TEST_CASE("incremental sup equals prefix recomputation")
{
    for (u64 b = 2; b <= 3; ++b)
        for (const u64 x : {8ULL, 300ULL, 4096ULL, 16384ULL})
        {
            const auto pals = star_pals(b, x);
            for (u64 q = 1; q <= 50; ++q)
            {
                const EquidistResult r = equidist_exact(b, x, q);
                CHECK(r.scaled == brute_scaled(pals, q));
                CHECK(r.total == pals.size());
                // coarse accounting bound
                CHECK(r.err() <= double(r.total) * (1.0 - 1.0 / double(q)) + 1.0 + 1e-12);
            }
        }
}

TEST_CASE("scan and histogram trackers agree")
{
    std::mt19937_64 rng(8);
    for (const u64 q : {1ULL, 2ULL, 7ULL, 999ULL, 1001ULL, 5000ULL})
    {
        ClassTracker a(q, ClassTracker::Mode::SCAN), h(q, ClassTracker::Mode::HISTOGRAM);
        for (int i = 0; i < 20000; ++i)
        {
            const u64 r = std::uniform_int_distribution<u64>(0, std::min<u64>(q - 1, 40))(rng);
            a.insert(r);
            h.insert(r);
            REQUIRE(a.scaled_deviation() == h.scaled_deviation());
        }
        CHECK(a.sup_scaled() == h.sup_scaled());
    }
    for (const u64 q : {5ULL, 1201ULL})
        CHECK(equidist_exact(3, 200000, q, ClassTracker::Mode::SCAN).scaled
              == equidist_exact(3, 200000, q, ClassTracker::Mode::HISTOGRAM).scaled);
}

TEST_CASE("modulus limit")
{
    CHECK(modulus_limit(pow_big(2, 11), 0.2, 0.01) == 4);
    CHECK(modulus_limit(BigInt(100000), 0.2, 0.0) == 10);
    CHECK(modulus_limit(BigInt(1), 0.2, 0.01) == 1);
}

TEST_CASE("aggregate error against a double loop")
{
    const BigInt x = pow_big(2, 11);
    const auto pals = star_pals(2, 2048);
    const u64 Q = modulus_limit(x, 0.2, 0.01);
    double want = 0;
    for (u64 q = 1; q <= Q; ++q)
        if (std::gcd(q, 6ULL) == 1) want += double(brute_scaled(pals, q)) / double(q);
    CHECK(aggregate_error(2, x, 0.2, 0.01) == want);

    // x = 2^17 with Q = 9: moduli 1, 5, 7
    const auto p17 = star_pals(2, 131072);
    double w17 = 0;
    for (u64 q : {1, 5, 7}) w17 += double(brute_scaled(p17, q)) / double(q);
    CHECK(aggregate_error(2, pow_big(2, 17), 0.2, 0.01) == doctest::Approx(w17).epsilon(1e-14));

    // Only q = 1 below 2
    CHECK(aggregate_error(2, 100, 0.05, 0.01) == 0.0);

    // nonnegative summands: monotone in Q
    double prev = 0;
    for (u64 Q2 = 1; Q2 <= 60; ++Q2)
    {
        const double a = error_table(5, 300000, Q2).aggregate();
        CHECK(a >= prev);
        prev = a;
    }
}

TEST_CASE("error table rows and thread invariance")
{
    const ErrorTable t1 = error_table(2, pow_big(2, 24), 40);
    for (const auto& r : t1.rows) CHECK(std::gcd(r.q, 6ULL) == 1);
    CHECK(t1.rows.size() == 13);
    set_threads(4);
    const ErrorTable t4 = error_table(2, pow_big(2, 24), 40);
    set_threads(1);
    REQUIRE(t4.rows.size() == t1.rows.size());
    for (std::size_t i = 0; i < t1.rows.size(); ++i) CHECK(t4.rows[i].scaled == t1.rows[i].scaled);
    CHECK(t4.aggregate() == t1.aggregate());
    CHECK(t1.aggregate() <= double(1 + t1.Q) * double(t1.total));
}

TEST_CASE("decay fit")
{
    std::vector<BigInt> xs;
    for (u64 e = 3; e <= 15; ++e) xs.push_back(pow_big(2, e));
    const DecayFit fit = fit_decay_report(2, xs, 0.2, 0.01);
    // Only x = 2^13..2^15 admit a modulus > 1 coprime to 6.
    CHECK(fit.fitted == 3);
    std::vector<double> u, v;
    for (const auto& p : fit.points)
    {
        CHECK(p.ratio() <= 1.0 + double(p.Q));
        if (p.aggregate > 0)
        {
            u.push_back(std::sqrt(std::log(p.x.get_d())));
            v.push_back(-std::log(p.ratio()));
        }
    }
    CHECK(fit.sigma_hat == doctest::Approx(ols_slope(u, v)));
    CHECK(fit_decay(2, xs, 0.2, 0.01) == fit.sigma_hat);
    CHECK_THROWS_AS(fit_decay(2, {pow_big(2, 20), pow_big(2, 20), pow_big(2, 22)}, 0.2, 0.01), FitError);
    CHECK_THROWS_AS(fit_decay(2, {pow_big(2, 20), pow_big(2, 22)}, 0.2, 0.01), FitError);
}
