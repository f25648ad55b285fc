#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "palinsieve/palindromes.hpp"
#include "palinsieve/parallel.hpp"
#include "palinsieve/sieve.hpp"

using namespace palinsieve;

namespace
{
    // Omega and least prime factor by trial division.
    std::pair<u64, u64> omega_pminus(u64 n)
    {
        u64 omega = 0, least = 0;
        for (u64 p = 2; p * p <= n; ++p)
            while (n % p == 0)
            {
                if (!least) least = p;
                ++omega;
                n /= p;
            }
        if (n > 1)
        {
            if (!least) least = n;
            ++omega;
        }
        return {omega, least};
    }

    bool digits_palindrome(u64 n, u64 b)
    {
        std::vector<u64> d;
        for (; n; n /= b) d.push_back(n % b);
        for (std::size_t i = 0; i < d.size() / 2; ++i)
            if (d[i] != d[d.size() - 1 - i]) return false;
        return true;
    }

    void check_factorization(const BigInt& n, const Factorization& f)
    {
        CHECK(f.product() == n);
        u64 total = 0;
        for (std::size_t i = 0; i < f.factors.size(); ++i)
        {
            CHECK(is_probable_prime(f.factors[i].first));
            if (i) CHECK(f.factors[i - 1].first < f.factors[i].first);
            total += f.factors[i].second;
        }
        CHECK(f.omega_total() == total);
        if (!f.factors.empty()) CHECK(*f.smallest_prime() == f.factors.front().first);
    }
}

TEST_CASE("primality")
{
    std::vector<bool> composite(200001, false);
    for (u64 p = 2; p * p <= 200000; ++p)
        if (!composite[p])
            for (u64 k = p * p; k <= 200000; k += p) composite[k] = true;
    for (u64 n = 2; n <= 200000; ++n) CHECK(is_prime_u64(n) == !composite[n]);
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(3215031751ULL));     // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime_u64(3825123056546413051ULL));
    CHECK(is_prime_u64((1ULL << 61) - 1));
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK(is_probable_prime(pow_big(2, 89) - 1));
    CHECK_FALSE(is_probable_prime(pow_big(2, 67) - 1));
}

TEST_CASE("factorize")
{
    CHECK(factorize(1).factors.empty());
    CHECK_FALSE(factorize(1).smallest_prime().has_value());
    const Factorization f = factorize(585585);
    check_factorization(585585, f);
    const std::vector<std::pair<BigInt, u64>> want{{3, 2}, {5, 1}, {7, 1}, {11, 1}, {13, 2}};
    CHECK(f.factors == want);
    CHECK(factorize(pow_big(2, 61) - 1).factors.size() == 1);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 300; ++i)
    {
        const u64 n = std::uniform_int_distribution<u64>(1, ~0ULL >> 4)(rng);
        check_factorization(n, factorize(n));
    }
    // 2^67 - 1 = 193707721 * 761838257287
    const Factorization m67 = factorize(pow_big(2, 67) - 1);
    check_factorization(pow_big(2, 67) - 1, m67);
    CHECK(m67.factors.front().first == 193707721);
    const BigInt big = BigInt(1000003) * BigInt(1000003) * (pow_big(2, 89) - 1);
    check_factorization(big, factorize(big));

    for (u64 n = 1; n < 3000; ++n)
    {
        const auto [om, pm] = omega_pminus(n);
        const Factorization fn = factorize(n);
        CHECK(fn.omega_total() == om);
        if (n > 1) CHECK(*fn.smallest_prime() == pm);
    }
}

TEST_CASE("delta_r")
{
    CHECK(delta_r(2) == doctest::Approx(2.0 + std::log(5.0 / 6.0) / std::log(3.0)));
    CHECK(delta_r(2) == doctest::Approx(1.83404).epsilon(1e-5));
    CHECK(std::abs(delta_r(6) - 5.73939) <= 1e-5);
    CHECK(delta6_margin() > 0.0);
    CHECK_THROWS_AS(delta_r(1), DomainError);
}

TEST_CASE("census examples")
{
    const SieveReport r = census(10, 100);
    CHECK(r.z == 1);
    CHECK(r.total_pal == 18);
    CHECK(r.qualifying == 18);
    CHECK(r.ratio == doctest::Approx(18.0 * std::log(100.0) / 18.0));
    CHECK(census(10, 100000, 0).qualifying == 1);
    CHECK(census(10, 10000000).z == iroot(BigInt(10000000), 21));
}

TEST_CASE("census against a filter over all integers")
{
    const u64 x = 1 << 15;
    for (const u64 r : {1, 2, 6})
        for (const u64 theta_inv : {2, 3, 21})
        {
            const u64 z = iroot(BigInt(x), theta_inv).get_ui();
            u64 total = 0, qual = 0;
            for (u64 n = 1; n <= x; ++n)
            {
                if (!digits_palindrome(n, 2)) continue;
                ++total;
                const auto [om, pm] = omega_pminus(n);
                if (om <= r && (n == 1 || pm >= z)) ++qual;
            }
            std::vector<CensusRow> rows;
            const SieveReport rep = census(2, x, r, theta_inv, &rows);
            CHECK(rep.total_pal == total);
            CHECK(rep.qualifying == qual);
            CHECK(rows.size() == total);
        }
}

TEST_CASE("census monotone in r and z, and thread invariant")
{
    const BigInt x = pow_big(10, 7);
    BigInt prev = 0;
    for (u64 r = 0; r <= 8; ++r)
    {
        const BigInt q = census(10, x, r).qualifying;
        CHECK(q >= prev);
        prev = q;
    }
    prev = census(10, x, 6, 2).qualifying;
    for (u64 t = 3; t <= 21; ++t)
    {
        const BigInt q = census(10, x, 6, t).qualifying;
        CHECK(q >= prev);
        prev = q;
    }
    set_threads(4);
    const SieveReport r4 = census(10, x);
    set_threads(1);
    CHECK(r4.qualifying == census(10, x).qualifying);
}

TEST_CASE("hypothesis check")
{
    for (const u64 e : {9, 12})
    {
        const BigInt x = pow_big(2, e);
        const HypothesisReport h = hypothesis_check(2, x);
        const u64 D = iroot(x * x * x * x, 21).get_ui();
        CHECK(h.D == D);
        std::vector<u64> pals;
        PalindromeStream s = enumerate({2, Filter::STAR}, x);
        while (s.next()) pals.push_back(s.value_u64());
        CHECK(h.total_star == pals.size());
        mpq_class want = 0;
        for (u64 d = 1; d <= D; ++d)
        {
            u64 c = 0;
            for (u64 n : pals) c += n % d == 0;
            const mpq_class g = std::gcd(d, 6ULL) == 1 ? mpq_class(1, d) : mpq_class(0);
            mpq_class diff = mpq_class(c) - g * mpq_class(pals.size());
            want += abs(diff);
        }
        CHECK(h.remainder_exact == want);
        CHECK(std::isfinite(h.mertens_K));
        CHECK(h.mertens_K > 0.0);
        CHECK(h.max_product >= 1.0);
        CHECK(h.grid_points > 0);
    }
}
