#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "palinsieve/numeric.hpp"
#include "palinsieve/parallel.hpp"

using namespace palinsieve;

TEST_CASE("modular helpers agree with naive loops")
{
    for (u64 m = 2; m <= 60; ++m)
        for (u64 a = 1; a < m; ++a)
        {
            u64 p = 1;
            for (u64 e = 0; e < 12; ++e)
            {
                CHECK(powmod(a, e, m) == p % m);
                p = p * a % m;
            }
            if (std::gcd(a, m) == 1)
            {
                CHECK(a * modinv(a, m) % m == 1);
                u64 k = 1, x = a % m;
                while (x != 1 % m)
                {
                    x = x * a % m;
                    ++k;
                }
                CHECK(mult_order(a, m) == k);
            }
            else
                CHECK_THROWS_AS(modinv(a, m), NoInverse);
        }
    CHECK(mulmod(~0ULL, ~0ULL, (1ULL << 61) - 1) == u64((u128(~0ULL) * ~0ULL) % ((1ULL << 61) - 1)));
}

TEST_CASE("phi and divisor counts")
{
    for (u64 n = 1; n <= 300; ++n)
    {
        u64 phi = 0, tau = 0;
        for (u64 k = 1; k <= n; ++k)
        {
            if (std::gcd(k, n) == 1) ++phi;
            if (n % k == 0) ++tau;
        }
        CHECK(euler_phi(n) == phi);
        CHECK(divisor_count(n) == tau);
    }
}

TEST_CASE("bigint helpers")
{
    CHECK(pow_big(10, 20).get_str() == "100000000000000000000");
    CHECK(iroot(BigInt(1000000000), 21) == 2);
    CHECK(iroot(pow_big(3, 42), 21) == 9);
    CHECK(iroot(pow_big(3, 42) - 1, 21) == 8);
    CHECK(log_big(pow_big(2, 4000)) == doctest::Approx(4000 * std::log(2.0)));
    CHECK(to_u64(BigInt("18446744073709551615")) == ~0ULL);
    CHECK_THROWS_AS(to_u64(pow_big(2, 64)), DomainError);
    // (b^n + b^{2N-n}) mod m
    CHECK(mirror_weight_mod(2, 1, 3, 7) == (2 + 32) % 7);
    CHECK(mirror_weight_mod(10, 2, 40, 997) == BigInt((pow_big(10, 2) + pow_big(10, 78)) % 997).get_ui());
}

TEST_CASE("angles reduce exactly")
{
    const Angle a = angle_from(-1, 3);
    CHECK(a.num() == 2);
    CHECK(a.den() == 3);
    CHECK(angle_from(6, 4) == angle_from(1, 2));
    CHECK(angle_from(BigInt(-7), BigInt(14)) == angle_from(1, 2));
    CHECK(angle_scale(angle_from(1, 3), 10) == angle_from(1, 3));
    CHECK(angle_scale(angle_from(1, 3), pow_big(2, 101)) == angle_from(2, 3));
    CHECK(angle_add(angle_from(1, 2), angle_from(1, 3)) == angle_from(5, 6));
    CHECK(angle_neg(angle_from(1, 5)) == angle_from(4, 5));
    CHECK(angle_dist(angle_from(3, 4)) == 0.25);
    CHECK(angle_dist_exact(angle_from(5, 7)) == angle_from(2, 7));
    CHECK_THROWS_AS(angle_from(1, 0), InvalidDenominator);
}

TEST_CASE("wide reals")
{
    const WideReal a = WideReal::from_big(pow_big(10, 400));
    CHECK(a.log10() == doctest::Approx(400.0));
    CHECK(std::isinf(a.to_double()));
    const WideReal s = a + a;
    CHECK(s.log() == doctest::Approx(std::log(2.0) + 400 * std::log(10.0)));
    CHECK((a * a).log10() == doctest::Approx(800.0));
    CHECK(WideReal(3.0) < WideReal(4.0));
    CHECK(WideReal::rel_diff(WideReal(1.0 + 1e-9), WideReal(1.0)) == doctest::Approx(1e-9).epsilon(1e-3));
    CHECK(WideReal::from_log(std::log(12.5)).to_double() == doctest::Approx(12.5));
    CHECK(WideReal().is_zero());
}

TEST_CASE("deterministic sum and slope")
{
    std::vector<double> xs(1000);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 1.0 / double(i + 1);
    CHECK(sum_deterministic(xs) == doctest::Approx(7.485470860550345));
    const std::vector<double> t{0, 1, 2, 3}, y{1, 3, 5, 7};
    CHECK(ols_slope(t, y) == doctest::Approx(2.0));
    const std::vector<double> flat{1, 1, 1};
    CHECK_THROWS_AS(ols_slope(flat, flat), FitError);
}

TEST_CASE("parallel_for visits each index once")
{
    for (unsigned t : {1u, 2u, 5u})
    {
        set_threads(t);
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
    set_threads(1);
}
