#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "palinsieve/calibration.hpp"
#include "palinsieve/palindromes.hpp"

using namespace palinsieve;

namespace
{
    std::vector<u64> digits(u64 n, u64 b)
    {
        std::vector<u64> d;
        for (; n; n /= b) d.push_back(n % b);
        return d;
    }

    bool brute_pal(u64 n, u64 b)
    {
        const auto d = digits(n, b);
        return std::equal(d.begin(), d.end(), d.rbegin());
    }

    bool brute_keep(u64 n, u64 b, Filter f)
    {
        if (!brute_pal(n, b)) return false;
        if (f == Filter::ALL) return true;
        if (digits(n, b).size() % 2 == 0) return false;
        return f == Filter::ODD_DIGITS || std::gcd(n, b * b * b - b) == 1;
    }

    std::vector<u64> collect(PalindromeStream s)
    {
        std::vector<u64> out;
        while (s.next()) out.push_back(s.value_u64());
        return out;
    }
}

TEST_CASE("is_palindrome")
{
    CHECK(is_palindrome(5, 2));
    CHECK_FALSE(is_palindrome(12, 10));
    CHECK(is_palindrome(7, 10));
    CHECK(is_palindrome(BigInt("12345678987654321"), 10));
    CHECK_THROWS_AS(is_palindrome(0, 10), DomainError);
    for (u64 b = 2; b <= 7; ++b)
        for (u64 n = 1; n < 3000; ++n) CHECK(is_palindrome(n, b) == brute_pal(n, b));
}

TEST_CASE("enumerate examples")
{
    const auto all = collect(enumerate({10, Filter::ALL}, 100));
    CHECK(all.size() == 18);
    CHECK(all.front() == 1);
    CHECK(all.back() == 99);
    CHECK(collect(enumerate({2, Filter::ODD_DIGITS}, 8)) == std::vector<u64>{1, 5, 7});
    CHECK(collect(enumerate({2, Filter::STAR}, 8)) == std::vector<u64>{1, 5, 7});
}

TEST_CASE("enumerate matches a filter over all integers")
{
    for (u64 b = 2; b <= 10; ++b)
        for (const Filter f : {Filter::ALL, Filter::ODD_DIGITS, Filter::STAR})
            for (const u64 x : {1ULL, 2ULL, 9ULL, 100ULL, 4097ULL, 20000ULL})
            {
                std::vector<u64> want;
                for (u64 n = 1; n <= x; ++n)
                    if (brute_keep(n, b, f)) want.push_back(n);
                CHECK_MESSAGE(collect(enumerate({b, f}, x)) == want, "b=" << b << " x=" << x);
            }
}

TEST_CASE("stream crosses the 128-bit boundary in order")
{
    const BigInt lo = pow_big(10, 38);
    PalindromeStream s({10, Filter::ALL}, pow_big(10, 40), 39, 41);
    BigInt prev = 0;
    u64 n = 0;
    while (s.next() && n < 5000)
    {
        const BigInt v = s.value();
        CHECK(v > prev);
        CHECK(v >= lo);
        CHECK(is_palindrome(v, 10));
        CHECK(s.mod(97) == mpz_class(v % 97).get_ui());
        prev = v;
        ++n;
    }
}

TEST_CASE("count_pi")
{
    CHECK(count_pi(2, 1) == 2);
    CHECK(count_pi(10, 0) == 9);
    CHECK(count_pi(3, 2) == 18);
    CHECK(collect(enumerate_length({3, Filter::ALL}, 5)).size() == 18);
    for (u64 b = 2; b <= 10; ++b)
        for (u64 N = 0; N <= 6; ++N)
        {
            if (b == 10 && N == 6) continue;    // acceptance covers it
            PalindromeStream s = enumerate_length({b, Filter::ALL}, 2 * N + 1);
            u64 c = 0;
            while (s.next()) ++c;
            CHECK(BigInt(c) == count_pi(b, N));
        }
}

TEST_CASE("count_pi_star")
{
    const PiStarCount c21 = count_pi_star(2, 1);
    CHECK(c21.exact == 2);
    CHECK(c21.main_term == doctest::Approx(4.0 / 3.0));
    CHECK(count_pi_star(2, 0).exact == 1);

    u64 want = 0;
    for (u64 a = 1; a <= 9; ++a)
        for (u64 m = 0; m <= 9; ++m)
            if (std::gcd(101 * a + 10 * m, 990ULL) == 1) ++want;
    CHECK(count_pi_star(10, 1).exact == want);

    for (u64 b = 2; b <= 10; ++b)
        for (u64 N = 0; N <= 5; ++N)
        {
            const PiStarCount c = count_pi_star(b, N);
            const double scale = double(b * b * divisor_count(b * b - 1));
            CHECK(std::abs(c.residual) <= calibration::kPiStarC * scale);
        }
    CHECK(calibration::kPiStarC <= 4.0);
}

TEST_CASE("star palindromes sit inside the odd-length set")
{
    for (u64 b = 2; b <= 10; ++b)
    {
        const auto star = collect(enumerate({b, Filter::STAR}, 200000));
        const auto odd = collect(enumerate({b, Filter::ODD_DIGITS}, 200000));
        CHECK(std::includes(odd.begin(), odd.end(), star.begin(), star.end()));
    }
}

TEST_CASE("#P* grows like sqrt x")
{
    for (u64 b : {2, 3, 10})
    {
        double lo = 1e300, hi = 0;
        for (u64 e = 4; e <= 8; ++e)
        {
            const BigInt x = pow_big(10, e);
            const double r = count_upto({b, Filter::STAR}, x).get_d() / std::sqrt(x.get_d());
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        CHECK(lo > 0.0);
        // odd lengths only: the ratio swings by about sqrt(b) within a decade
        CHECK(hi / lo < 2.0 * b);
    }
}

TEST_CASE("class_counts")
{
    const auto c = class_counts({2, Filter::STAR}, 8, 3);
    CHECK(c == std::vector<BigInt>{0, 2, 1});
    // 2, 4, 6, 8, 22, 44, 66, 88 are the even ones
    CHECK(class_counts({10, Filter::ALL}, 100, 2) == std::vector<BigInt>{8, 10});
    for (u64 b = 2; b <= 10; ++b)
        for (u64 q = 1; q <= 30; ++q)
        {
            std::vector<BigInt> want(q, 0);
            for (u64 n = 1; n <= 5000; ++n)
                if (brute_keep(n, b, Filter::STAR)) want[n % q] += 1;
            CHECK(class_counts({b, Filter::STAR}, 5000, q) == want);
        }
    CHECK(class_counts({7, Filter::ODD_DIGITS}, 5000, 1) == std::vector<BigInt>{count_upto({7, Filter::ODD_DIGITS}, 5000)});
    CHECK_THROWS_AS(class_counts({10, Filter::ALL}, 100, 0), DomainError);
}
