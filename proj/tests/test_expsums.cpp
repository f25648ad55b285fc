#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "palinsieve/expsums.hpp"
#include "palinsieve/palindromes.hpp"

using namespace palinsieve;

namespace
{
    // |sum_{m<b} e(t m)| by direct summation.
    double phi_direct(u64 b, long double t)
    {
        std::complex<long double> s = 0;
        for (u64 m = 0; m < b; ++m)
            s += std::polar<long double>(1.0L, 2.0L * std::numbers::pi_v<long double> * t * (long double)m);
        return double(std::abs(s));
    }

    // Product over n in [lo, hi] of phi_b(a (b^n + b^{2N-n})) with the
    // argument reduced through BigInt.
    double product_direct(u64 b, u64 N, u64 lo, u64 hi, const Angle& a)
    {
        double p = 1.0;
        for (u64 n = lo; n <= hi; ++n)
        {
            const BigInt w = pow_big(b, n) + pow_big(b, 2 * N - n);
            const BigInt r = (BigInt(a.num()) * w) % BigInt(a.den());
            p *= phi_direct(b, (long double)r.get_d() / (long double)a.den());
        }
        return p;
    }

    Angle random_angle(std::mt19937_64& rng, u64 max_den)
    {
        const u64 den = std::uniform_int_distribution<u64>(1, max_den)(rng);
        return angle_from(i64(std::uniform_int_distribution<u64>(0, den - 1)(rng)), den);
    }
}

TEST_CASE("phi examples and closed form")
{
    for (u64 b = 2; b <= 12; ++b)
    {
        CHECK(phi(b, Angle()) == double(b));
        CHECK(phi(b, angle_from(1, b)) == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(phi(2, angle_from(1, 3)) == doctest::Approx(1.0).epsilon(1e-14));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i)
    {
        const u64 b = std::uniform_int_distribution<u64>(2, 12)(rng);
        const Angle a = random_angle(rng, 5000);
        CHECK(phi(b, a) == doctest::Approx(phi_direct(b, (long double)a.num() / a.den())).epsilon(1e-9).scale(b));
        CHECK(phi(b, a) == phi(b, angle_neg(a)));
    }
}

TEST_CASE("exponential bound and monotonicity over dense grids")
{
    for (u64 b = 2; b <= 10; ++b)
    {
        const u64 den = 997 * b;
        for (u64 n = 0; n <= den / b; ++n)
        {
            const Angle a = angle_from(i64(n), den);
            const double d = angle_dist(a);
            CHECK(phi(b, a) <= b * std::exp(-std::numbers::pi * std::numbers::pi / 6.0 * double(b * b - 1) * d * d)
                                   * (1 + 1e-12));
        }
        const u64 dd = 60 * b;
        for (u64 dn = 1; 3 * b * dn <= 2 * dd; ++dn)
        {
            const Angle delta = angle_from(i64(dn), dd);
            for (u64 an = 0; an < 997; ++an)
            {
                const Angle a = angle_from(i64(an), 997);
                if (angle_dist(a) < delta.value()) continue;
                CHECK(phi(b, a) <= phi(b, delta) * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("log_product")
{
    std::mt19937_64 rng(5);
    for (const Angle a : {Angle(), angle_from(1, 3), angle_from(2, 7)}) CHECK(log_product(big_phi_spec(3, 1), a).log == 0.0);
    for (u64 N = 2; N < 9; ++N)
        CHECK(log_product(big_phi_spec(5, N), Angle()).log == doctest::Approx((N - 1) * std::log(5.0)));
    const LogValue v = log_product(big_phi_spec(2, 2), angle_from(1, 3));
    CHECK_FALSE(v.zero);
    CHECK(v.log == doctest::Approx(0.0).epsilon(1e-14));
    // 34/4 = 1/2 mod 1 and phi_2(1/2) = 0
    CHECK(log_product(big_phi_spec(2, 3), angle_from(1, 4)).zero);
    CHECK(LogValue::Zero() < LogValue{-1e300, false});

    for (int i = 0; i < 300; ++i)
    {
        const u64 b = std::uniform_int_distribution<u64>(2, 7)(rng);
        const u64 N = std::uniform_int_distribution<u64>(2, 9)(rng);
        const Angle a = random_angle(rng, 100000);
        const LogValue lv = log_product(big_phi_spec(b, N), a);
        const double want = product_direct(b, N, 1, N - 1, a);
        if (lv.zero)
            CHECK(want < 1e-9);
        else
            CHECK(lv.value() == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("shift identity")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i)
    {
        const u64 b = std::uniform_int_distribution<u64>(2, 7)(rng);
        const u64 N = std::uniform_int_distribution<u64>(3, 20)(rng);
        const u64 M = std::uniform_int_distribution<u64>(0, N - 2)(rng);
        u64 q = 0;
        do q = std::uniform_int_distribution<u64>(2, 5000)(rng);
        while (gcd_u64(q, b) != 1);
        const u64 h = std::uniform_int_distribution<u64>(1, q - 1)(rng);
        const Angle a = angle_from(i64(h), q);
        const BigInt bm = pow_big(b, M);

        const LogValue lhs = log_product({b, N, M + 1, N - 1, Angle()}, a);
        const LogValue rhs = log_product(big_phi_spec(b, N - M), angle_scale(a, bm));
        CHECK(lhs == rhs);

        const Angle beta = angle_from(i64(std::uniform_int_distribution<u64>(0, 5)(rng)), b * b * b - b);
        const LogValue l2 = log_product({b, N, M + 1, N - 1, beta}, a);
        const LogValue r2 = log_product(big_phi_spec(b, N - M, angle_scale(beta, bm)), angle_scale(a, bm));
        CHECK(l2.zero == r2.zero);
        if (!l2.zero) CHECK(l2.log == doctest::Approx(r2.log).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("pal_exp_sum")
{
    const auto s0 = pal_exp_sum(7, 5000, Angle());
    CHECK(s0.real() == count_upto({7, Filter::ODD_DIGITS}, 5000).get_d());
    CHECK(s0.imag() == 0.0);
    const auto s1 = pal_exp_sum(10, 100, angle_from(1, 2));
    CHECK(s1.real() == doctest::Approx(-1.0));
    CHECK(s1.imag() == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    const auto want = 2.0 * std::polar(1.0, 2 * std::numbers::pi / 3) + std::polar(1.0, 4 * std::numbers::pi / 3);
    const auto s2 = pal_exp_sum(2, 8, angle_from(1, 3));
    CHECK(s2.real() == doctest::Approx(want.real()));
    CHECK(s2.imag() == doctest::Approx(want.imag()));
}

TEST_CASE("decomposition bound")
{
    // a = 0: b^2 sum_{N} sum_{M<=N} Phi_M(0)
    for (u64 b = 2; b <= 5; ++b)
    {
        const BigInt x = pow_big(b, 7);
        double want = 0;
        for (u64 N = 0; 2 * N <= 7; ++N)
            for (u64 M = 0; M <= N; ++M) want += std::pow(double(b), double(M >= 1 ? M - 1 : 0));
        CHECK(decomposition_bound(b, x, Angle()) == doctest::Approx(b * b * want));
    }
    std::mt19937_64 rng(3);
    CHECK(decomposition_bound(2, 4, random_angle(rng, 100)) <= 12.0 + 1e-12);
    CHECK(decomposition_bound(2, 4, Angle()) == doctest::Approx(12.0));
    for (int i = 0; i < 60; ++i)
    {
        const u64 b = std::uniform_int_distribution<u64>(2, 5)(rng);
        const u64 x = std::uniform_int_distribution<u64>(1, 200000)(rng);
        const Angle a = random_angle(rng, 10000);
        CHECK(std::abs(pal_exp_sum(b, x, a)) <= decomposition_bound(b, x, a) * (1 + 1e-9));
    }
}

TEST_CASE("s_q")
{
    CHECK(s_q(2, 3, 2, 1, 1) == doctest::Approx(1.0));
    CHECK(s_q(10, 7, 9, 0, 0) == doctest::Approx(9.0));
    CHECK_THROWS_AS(s_q(10, 4, 3, 1, 1), NoInverse);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 500; ++i)
    {
        const u64 b = std::uniform_int_distribution<u64>(2, 10)(rng);
        u64 q = 0;
        do q = std::uniform_int_distribution<u64>(2, 3000)(rng);
        while (gcd_u64(q, b) != 1);
        const u64 M = std::uniform_int_distribution<u64>(1, 400)(rng);
        const i64 aa = i64(std::uniform_int_distribution<u64>(0, q - 1)(rng));
        const i64 k = i64(std::uniform_int_distribution<u64>(0, q - 1)(rng));
        // direct sum with explicit inverse powers
        const u64 binv = modinv(b % q, q);
        std::complex<double> s = 0;
        u64 bn = 1, bi = 1;
        for (u64 n = 1; n <= M; ++n)
        {
            bn = bn * b % q;
            bi = bi * binv % q;
            const u64 r = (u64(aa) * bn + u64(k) * bi) % q;
            s += std::polar(1.0, 2 * std::numbers::pi * double(r) / double(q));
        }
        CHECK(s_q(b, q, M, aa, k) == doctest::Approx(std::abs(s)).epsilon(1e-9).scale(M));
        CHECK(s_q(b, q, M, aa, k) <= s_q_bound(b, q, M) * (1 + 1e-9));
    }
}

TEST_CASE("L-infinity decay fit")
{
    const LinftyFit f = fit_linfty(2, 5, 0, {8, 16, 32});
    CHECK(f.sigma_hat > 0.0);
    CHECK_FALSE(f.sampled);
    CHECK(f.residues_used == 4);
    for (double r : f.ratios) CHECK(r <= 1.0);
    CHECK(fit_linfty_decay(2, 5, 0, {8, 16, 32}) == f.sigma_hat);
    CHECK_THROWS_AS(fit_linfty_decay(2, 3, 0, {8, 16}), DomainError);
    CHECK_THROWS_AS(fit_linfty_decay(10, 11, 0, {8, 16}), DomainError);

    // q above 10^4 samples its residues, reproducibly
    const LinftyFit big = fit_linfty(2, 10007, 1, {4, 8, 16}, 9);
    CHECK(big.sampled);
    CHECK(big.residues_used == 10000);
    CHECK(fit_linfty(2, 10007, 1, {4, 8, 16}, 9).sigma_hat == big.sigma_hat);
}
