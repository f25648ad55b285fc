#include "palinsieve/expsums.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "palinsieve/palindromes.hpp"
#include "palinsieve/parallel.hpp"

namespace palinsieve
{
    double phi_frac(u64 b, u64 num, u64 den)
    {
        if (num == 0) return double(b);
        const u64 r = mulmod(b % den, num, den);
        if (r == 0) return 0.0;
        const double top = double(std::min(r, den - r)) / double(den);
        const double bot = double(std::min(num, den - num)) / double(den);
        return std::sin(std::numbers::pi * top) / std::sin(std::numbers::pi * bot);
    }

    double phi(u64 b, const Angle& a)
    {
        if (b < 2) throw DomainError("phi: base must be >= 2");
        return phi_frac(b, a.num(), a.den());
    }

    double LogValue::value() const
    {
        return zero ? 0.0 : std::exp(log);
    }

    WideReal LogValue::wide() const
    {
        return zero ? WideReal() : WideReal::from_log(log);
    }

    ProductSpec big_phi_spec(u64 b, u64 N, Angle shift)
    {
        ProductSpec s;
        s.b = b;
        s.N = N;
        s.lo = 1;
        s.hi = N >= 1 ? N - 1 : 0;
        s.shift = shift;
        return s;
    }

    ProductSpec p_m_spec(u64 b, u64 N, u64 M, Angle shift)
    {
        if (M > 2 * N) throw DomainError("P_M requires M <= 2N");
        ProductSpec s;
        s.b = b;
        s.N = N;
        s.lo = 1;
        s.hi = M;
        s.shift = shift;
        return s;
    }

    LogValue log_product(const ProductSpec& spec, const Angle& a)
    {
        if (spec.b < 2) throw DomainError("log_product: base must be >= 2");
        if (spec.lo <= spec.hi && spec.hi > 2 * spec.N) throw DomainError("log_product: range exceeds 2N");
        const Angle t = spec.shift.is_zero() ? a : angle_add(a, spec.shift);
        LogValue out;
        if (spec.lo > spec.hi) return out;
        const u64 den = t.den();
        if (t.is_zero())
        {
            out.log = double(spec.hi - spec.lo + 1) * std::log(double(spec.b));
            return out;
        }
        u64 lo_pow = powmod(spec.b, spec.lo, den);
        u64 hi_pow = powmod(spec.b, 2 * spec.N - spec.hi, den);
        // hi_pow walks downward in the exponent, so collect it in reverse
        std::vector<u64> hi_pows(spec.hi - spec.lo + 1);
        for (std::size_t i = hi_pows.size(); i-- > 0;)
        {
            hi_pows[i] = hi_pow;
            hi_pow = mulmod(hi_pow, spec.b, den);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < hi_pows.size(); ++i)
        {
            u64 m = lo_pow + hi_pows[i];
            if (m >= den || m < lo_pow) m -= den;
            const double f = phi_frac(spec.b, mulmod(t.num(), m, den), den);
            if (f == 0.0) return LogValue::Zero();
            acc += std::log(f);
            lo_pow = mulmod(lo_pow, spec.b, den);
        }
        out.log = checked(acc, "log_product");
        return out;
    }

    std::complex<double> pal_exp_sum(u64 b, const BigInt& x, const Angle& a)
    {
        PalindromeStream s = enumerate({b, Filter::ODD_DIGITS}, x);
        std::vector<double> re, im;
        const u64 den = a.den();
        while (s.next())
        {
            const u64 r = mulmod(s.mod(den), a.num(), den);
            const double ang = 2.0 * std::numbers::pi * double(r) / double(den);
            re.push_back(std::cos(ang));
            im.push_back(std::sin(ang));
        }
        return {sum_deterministic(re), sum_deterministic(im)};
    }

    double decomposition_bound(u64 b, const BigInt& x, const Angle& a)
    {
        if (sgn(x) < 1) throw DomainError("decomposition_bound: x must be >= 1");
        // largest Nmax with b^{2 Nmax} <= x
        u64 nmax = 0;
        while (pow_big(b, 2 * (nmax + 1)) <= x) ++nmax;
        WideReal total;
        for (u64 N = 0; N <= nmax; ++N)
        {
            for (u64 M = 0; M <= N; ++M)
            {
                const Angle arg = angle_scale(a, pow_big(b, N - M));
                total += log_product(big_phi_spec(b, M), arg).wide();
            }
        }
        total *= WideReal(double(b * b));
        return total.to_double();
    }

    double s_q(u64 b, u64 q, u64 M, i64 aa, i64 k)
    {
        if (q < 2) throw DomainError("s_q: q must be >= 2");
        const u64 binv = modinv(b % q, q);
        const auto residue = [q](i64 v) { i64 r = v % i64(q); return u64(r < 0 ? r + i64(q) : r); };
        const u64 ar = residue(aa), kr = residue(k);
        u64 bp = b % q, ip = binv;
        std::vector<double> re, im;
        re.reserve(M);
        im.reserve(M);
        for (u64 n = 1; n <= M; ++n)
        {
            const u64 e = (mulmod(ar, bp, q) + mulmod(kr, ip, q)) % q;
            const double ang = 2.0 * std::numbers::pi * double(e) / double(q);
            re.push_back(std::cos(ang));
            im.push_back(std::sin(ang));
            bp = mulmod(bp, b, q);
            ip = mulmod(ip, binv, q);
        }
        return std::hypot(sum_deterministic(re), sum_deterministic(im));
    }

    double s_q_bound(u64 b, u64 q, u64 M)
    {
        const double ord = double(mult_order(b % q, q));
        return double(M) * double(divisor_count(q)) * std::sqrt(double(q)) / ord + ord;
    }

    LinftyFit fit_linfty(u64 b, u64 q, u64 k, const std::vector<u64>& Ms, u64 seed)
    {
        if (b < 2) throw DomainError("fit_linfty: base must be >= 2");
        const u64 m = b * b * b - b;
        if (q < 2 || gcd_u64(q, m) != 1) throw DomainError("fit_linfty: need q >= 2 and gcd(q, b^3 - b) = 1");
        if (Ms.size() < 2) throw FitError("fit_linfty: need at least two values of M");

        std::vector<u64> hs;
        LinftyFit fit;
        const u64 limit = 10000;
        if (q <= limit)
        {
            for (u64 h = 1; h < q; ++h)
                if (gcd_u64(h, q) == 1) hs.push_back(h);
        }
        else
        {
            fit.sampled = true;
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<u64> pick(1, q - 1);
            while (hs.size() < limit)
            {
                const u64 h = pick(rng);
                if (gcd_u64(h, q) == 1) hs.push_back(h);
            }
        }
        fit.residues_used = hs.size();

        const Angle shift = angle_from(i64(k % m), m);
        std::vector<double> xs, ys;
        for (const u64 M : Ms)
        {
            if (M < 1) throw DomainError("fit_linfty: M must be >= 1");
            const ProductSpec spec = p_m_spec(b, M, M, shift);
            std::vector<LogValue> best(hs.size());
            parallel_for(hs.size(), [&](std::size_t i)
            {
                best[i] = log_product(spec, angle_from(i64(hs[i]), q));
            });
            LogValue mx = LogValue::Zero();
            for (const auto& v : best)
                if (mx < v) mx = v;
            if (mx.zero) throw FitError("fit_linfty: every product vanished at M = " + std::to_string(M));
            const double log_ratio = mx.log - double(M) * std::log(double(b));
            fit.ratios.push_back(std::exp(log_ratio));
            xs.push_back(double(M));
            ys.push_back(-log_ratio * std::log(double(q)));
        }
        fit.sigma_hat = ols_slope(xs, ys);
        return fit;
    }

    double fit_linfty_decay(u64 b, u64 q, u64 k, const std::vector<u64>& Ms)
    {
        return fit_linfty(b, q, k, Ms).sigma_hat;
    }
}
