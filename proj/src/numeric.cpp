#include "palinsieve/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <vector>

namespace palinsieve
{
    double checked(double x, const char* what)
    {
        if (std::isnan(x)) throw NumericError(std::string("NaN produced by ") + what);
        return x;
    }

    u64 gcd_u64(u64 a, u64 b)
    {
        while (b != 0)
        {
            const u64 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    u64 mulmod(u64 a, u64 b, u64 m)
    {
        return u64((u128(a) * b) % m);
    }

    u64 powmod(u64 base, u64 e, u64 m)
    {
        if (m == 1) return 0;
        u64 r = 1, x = base % m;
        while (e != 0)
        {
            if (e & 1) r = mulmod(r, x, m);
            x = mulmod(x, x, m);
            e >>= 1;
        }
        return r;
    }

    u64 modinv(u64 a, u64 m)
    {
        if (m == 0) throw InvalidDenominator("modinv: zero modulus");
        if (m == 1) return 0;
        // extended Euclid on signed 128-bit to avoid overflow
        __int128 r0 = m, r1 = a % m, s0 = 0, s1 = 1;
        while (r1 != 0)
        {
            const __int128 qt = r0 / r1;
            __int128 t = r0 - qt * r1; r0 = r1; r1 = t;
            t = s0 - qt * s1; s0 = s1; s1 = t;
        }
        if (r0 != 1) throw NoInverse("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
        if (s0 < 0) s0 += m;
        return u64(s0);
    }

    static std::vector<u64> distinct_prime_factors(u64 n)
    {
        std::vector<u64> ps;
        for (u64 p = 2; p * p <= n; p += (p == 2) ? 1 : 2)
        {
            if (n % p == 0)
            {
                ps.push_back(p);
                while (n % p == 0) n /= p;
            }
        }
        if (n > 1) ps.push_back(n);
        return ps;
    }

    u64 euler_phi(u64 n)
    {
        if (n == 0) return 0;
        u64 r = n;
        for (const u64 p : distinct_prime_factors(n)) r = r / p * (p - 1);
        return r;
    }

    u64 divisor_count(u64 n)
    {
        if (n == 0) throw DomainError("divisor_count: n = 0");
        u64 t = 1;
        for (u64 p = 2; p * p <= n; p += (p == 2) ? 1 : 2)
        {
            u64 e = 0;
            while (n % p == 0) { n /= p; ++e; }
            t *= e + 1;
        }
        if (n > 1) t *= 2;
        return t;
    }

    u64 mult_order(u64 a, u64 m)
    {
        if (m < 2) throw DomainError("mult_order: modulus must be >= 2");
        if (gcd_u64(a % m, m) != 1) throw NoInverse("mult_order: base not a unit");
        u64 ord = euler_phi(m);
        for (const u64 p : distinct_prime_factors(ord))
        {
            while (ord % p == 0 && powmod(a, ord / p, m) == 1) ord /= p;
        }
        return ord;
    }

    bool fits_u64(const BigInt& n)
    {
        return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
    }

    u64 to_u64(const BigInt& n)
    {
        if (!fits_u64(n)) throw DomainError("value does not fit in 64 bits: " + n.get_str());
        u64 r = 0;
        mpz_export(&r, nullptr, -1, sizeof(u64), 0, 0, n.get_mpz_t());
        return r;
    }

    BigInt pow_big(u64 base, u64 e)
    {
        BigInt r;
        mpz_ui_pow_ui(r.get_mpz_t(), base, e);
        return r;
    }

    BigInt iroot(const BigInt& n, unsigned long k)
    {
        if (sgn(n) < 0 || k == 0) throw DomainError("iroot: invalid arguments");
        BigInt r;
        mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
        return r;
    }

    double log_big(const BigInt& n)
    {
        if (sgn(n) <= 0) throw DomainError("log_big: nonpositive argument");
        long e = 0;
        const double d = mpz_get_d_2exp(&e, n.get_mpz_t());
        return std::log(d) + double(e) * std::log(2.0);
    }

    u64 mirror_weight_mod(u64 b, u64 n, u64 N, u64 m)
    {
        if (m == 1) return 0;
        const u64 lo = powmod(b, n, m);
        const u64 hi = powmod(b, 2 * N - n, m);
        const u64 s = lo + hi;
        return (s < lo || s >= m) ? s - m : s;
    }

    std::string Angle::str() const
    {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    Angle make_reduced(u64 num, u64 den)
    {
        Angle a;
        if (num == 0)
        {
            a.num_ = 0;
            a.den_ = 1;
            return a;
        }
        const u64 g = gcd_u64(num, den);
        a.num_ = num / g;
        a.den_ = den / g;
        return a;
    }

    Angle angle_from(i64 num, u64 den)
    {
        if (den == 0) throw InvalidDenominator("angle denominator must be positive");
        i64 r;
        if (den > u64(std::numeric_limits<i64>::max()))
        {
            r = num;    // |num| < den in this case unless negative
            if (num < 0) return make_reduced(den - u64(-(num + 1)) - 1, den);
            return make_reduced(u64(r), den);
        }
        r = num % i64(den);
        if (r < 0) r += i64(den);
        return make_reduced(u64(r), den);
    }

    Angle angle_from(const BigInt& num, const BigInt& den)
    {
        if (sgn(den) <= 0) throw InvalidDenominator("angle denominator must be positive");
        const u64 d = to_u64(den);
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        return make_reduced(to_u64(r), d);
    }

    Angle angle_scale(const Angle& a, u64 m)
    {
        return make_reduced(mulmod(a.num(), m % a.den(), a.den()), a.den());
    }

    Angle angle_scale(const Angle& a, const BigInt& m)
    {
        const u64 r = mpz_fdiv_ui(m.get_mpz_t(), a.den());
        return make_reduced(mulmod(a.num(), r, a.den()), a.den());
    }

    Angle angle_add(const Angle& a, const Angle& b)
    {
        const u64 g = gcd_u64(a.den(), b.den());
        const u128 l = u128(a.den() / g) * b.den();
        if (l > u128(std::numeric_limits<u64>::max()))
            throw DomainError("angle_add: common denominator exceeds 64 bits");
        const u64 den = u64(l);
        const u64 x = mulmod(a.num(), den / a.den(), den);
        const u64 y = mulmod(b.num(), den / b.den(), den);
        u64 s = x + y;
        if (s < x || s >= den) s -= den;
        return make_reduced(s, den);
    }

    Angle angle_neg(const Angle& a)
    {
        return a.is_zero() ? a : make_reduced(a.den() - a.num(), a.den());
    }

    double angle_dist(const Angle& a)
    {
        const u64 m = std::min(a.num(), a.den() - a.num());
        return a.is_zero() ? 0.0 : double(m) / double(a.den());
    }

    Angle angle_dist_exact(const Angle& a)
    {
        if (a.is_zero()) return a;
        return make_reduced(std::min(a.num(), a.den() - a.num()), a.den());
    }

    static double pairwise(const double* p, std::size_t n)
    {
        if (n <= 16)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += p[i];
            return s;
        }
        const std::size_t h = n / 2;
        return pairwise(p, h) + pairwise(p + h, n - h);
    }

    double sum_deterministic(std::span<const double> xs)
    {
        return checked(pairwise(xs.data(), xs.size()), "sum_deterministic");
    }

    double ols_slope(std::span<const double> xs, std::span<const double> ys)
    {
        if (xs.size() != ys.size() || xs.size() < 2) throw FitError("ols_slope: need at least two paired points");
        const double n = double(xs.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            mx += xs[i];
            my += ys[i];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        if (!(sxx > 0.0)) throw FitError("ols_slope: zero variance in abscissae");
        return checked(sxy / sxx, "ols_slope");
    }

    // WideReal

    WideReal::WideReal(double x)
    {
        if (!(x >= 0.0) || std::isinf(x)) throw NumericError("WideReal: value must be finite and >= 0");
        mant_ = x;
        exp_ = 0;
        normalise();
    }

    void WideReal::normalise()
    {
        if (mant_ == 0.0)
        {
            exp_ = 0;
            return;
        }
        int e = 0;
        mant_ = std::frexp(mant_, &e);
        exp_ += e;
    }

    WideReal WideReal::from_log(double log_value)
    {
        checked(log_value, "WideReal::from_log");
        WideReal w;
        if (std::isinf(log_value))
        {
            if (log_value > 0) throw NumericError("WideReal::from_log: +inf");
            return w;
        }
        const double ln2 = std::log(2.0);
        const double k = std::floor(log_value / ln2);
        w.mant_ = std::exp(log_value - k * ln2);
        w.exp_ = i64(k);
        w.normalise();
        return w;
    }

    WideReal WideReal::from_big(const BigInt& n)
    {
        if (sgn(n) < 0) throw DomainError("WideReal::from_big: negative");
        WideReal w;
        if (sgn(n) == 0) return w;
        long e = 0;
        w.mant_ = mpz_get_d_2exp(&e, n.get_mpz_t());
        w.exp_ = e;
        w.normalise();
        return w;
    }

    double WideReal::log() const
    {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(mant_) + double(exp_) * std::log(2.0);
    }

    double WideReal::log10() const
    {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log10(mant_) + double(exp_) * std::log10(2.0);
    }

    double WideReal::to_double() const
    {
        if (exp_ > 1100) return std::numeric_limits<double>::infinity();
        if (exp_ < -1200) return 0.0;
        return std::ldexp(mant_, int(exp_));
    }

    std::string WideReal::str(int digits) const
    {
        if (is_zero()) return "0";
        const double l = log10();
        double e10 = std::floor(l);
        double m10 = std::pow(10.0, l - e10);
        if (m10 >= 10.0) { m10 /= 10.0; e10 += 1.0; }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*fe%+lld", digits, m10, static_cast<long long>(e10));
        return buf;
    }

    WideReal& WideReal::operator+=(const WideReal& o)
    {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        if (exp_ >= o.exp_)
        {
            const i64 d = exp_ - o.exp_;
            if (d < 1100) mant_ += std::ldexp(o.mant_, -int(d));
        }
        else
        {
            const i64 d = o.exp_ - exp_;
            mant_ = (d < 1100 ? std::ldexp(mant_, -int(d)) : 0.0) + o.mant_;
            exp_ = o.exp_;
        }
        normalise();
        return *this;
    }

    WideReal& WideReal::operator*=(const WideReal& o)
    {
        if (is_zero() || o.is_zero())
        {
            mant_ = 0.0;
            exp_ = 0;
            return *this;
        }
        mant_ *= o.mant_;
        exp_ += o.exp_;
        normalise();
        return *this;
    }

    std::partial_ordering operator<=>(const WideReal& a, const WideReal& b)
    {
        if (a.is_zero() || b.is_zero()) return a.mant_ <=> b.mant_;
        if (a.exp_ != b.exp_) return a.exp_ <=> b.exp_;
        return a.mant_ <=> b.mant_;
    }

    double WideReal::rel_diff(const WideReal& a, const WideReal& b)
    {
        if (b.is_zero()) return a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
        const i64 d = a.exp_ - b.exp_;
        if (d > 1000) return std::numeric_limits<double>::infinity();
        if (d < -1000) return 1.0;
        return std::abs(std::ldexp(a.mant_ / b.mant_, int(d)) - 1.0);
    }
}
