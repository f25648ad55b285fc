#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace palinsieve
{
    using u64 = std::uint64_t;
    using i64 = std::int64_t;
    using u128 = unsigned __int128;
    using BigInt = mpz_class;

    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Input outside an operation's mathematical domain.
    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidDenominator : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    class NoInverse : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    class PreconditionError : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    // A resource guard (coefficient count, grid size, memory) was exceeded.
    class SizeGuardError : public Error
    {
    public:
        using Error::Error;
    };

    class GridTooCoarse : public Error
    {
    public:
        using Error::Error;
    };

    class FitError : public Error
    {
    public:
        using Error::Error;
    };

    class NumericError : public Error
    {
    public:
        using Error::Error;
    };

    // Throws NumericError on NaN; every public Real result goes through this.
    double checked(double x, const char* what);

    u64 gcd_u64(u64 a, u64 b);
    u64 mulmod(u64 a, u64 b, u64 m);
    u64 powmod(u64 base, u64 e, u64 m);
    // Inverse of a modulo m; throws NoInverse when gcd(a, m) > 1.
    u64 modinv(u64 a, u64 m);
    // Multiplicative order of a modulo m, gcd(a, m) = 1 required.
    u64 mult_order(u64 a, u64 m);
    u64 euler_phi(u64 n);
    u64 divisor_count(u64 n);

    bool fits_u64(const BigInt& n);
    u64 to_u64(const BigInt& n);
    BigInt pow_big(u64 base, u64 e);
    // Largest z with z^k <= n (n >= 0, k >= 1).
    BigInt iroot(const BigInt& n, unsigned long k);
    // Natural log of a positive BigInt without overflow.
    double log_big(const BigInt& n);

    // (b^n + b^{2N-n}) mod m, never materialising b^{2N-n}.
    u64 mirror_weight_mod(u64 b, u64 n, u64 N, u64 m);

    // A point of R/Z stored as a reduced fraction num/den, 0 <= num < den.
    class Angle
    {
    public:
        Angle() = default;

        u64 num() const { return num_; }
        u64 den() const { return den_; }
        bool is_zero() const { return num_ == 0; }
        double value() const { return double(num_) / double(den_); }
        std::string str() const;

        friend bool operator==(const Angle&, const Angle&) = default;

    private:
        friend Angle make_reduced(u64 num, u64 den);
        u64 num_ = 0;
        u64 den_ = 1;
    };

    // num, den already satisfy 0 <= num < den; reduces by the gcd.
    Angle make_reduced(u64 num, u64 den);

    Angle angle_from(i64 num, u64 den);
    Angle angle_from(const BigInt& num, const BigInt& den);
    Angle angle_scale(const Angle& a, const BigInt& m);
    Angle angle_scale(const Angle& a, u64 m);
    Angle angle_add(const Angle& a, const Angle& b);
    Angle angle_neg(const Angle& a);
    // ||a||, distance to the nearest integer.
    double angle_dist(const Angle& a);
    // ||a|| as an exact angle in [0, 1/2].
    Angle angle_dist_exact(const Angle& a);

    // Pairwise summation; the result depends only on the element order.
    double sum_deterministic(std::span<const double> xs);

    // Ordinary least-squares slope of ys against xs; FitError on zero variance.
    double ols_slope(std::span<const double> xs, std::span<const double> ys);

    // Nonnegative real with an unbounded binary exponent: value = mant * 2^exp,
    // mant in [0.5, 1) or exactly 0. Used for moments such as b^{2K(N-1)} that
    // leave double range.
    class WideReal
    {
    public:
        WideReal() = default;
        explicit WideReal(double x);
        static WideReal from_log(double log_value);
        static WideReal from_big(const BigInt& n);
        static WideReal zero() { return WideReal(); }

        bool is_zero() const { return mant_ == 0.0; }
        double log() const;
        double log10() const;
        // Value as a double; +inf when out of range.
        double to_double() const;
        std::string str(int digits = 12) const;

        WideReal& operator+=(const WideReal& o);
        WideReal& operator*=(const WideReal& o);
        friend WideReal operator+(WideReal a, const WideReal& b) { return a += b; }
        friend WideReal operator*(WideReal a, const WideReal& b) { return a *= b; }
        friend std::partial_ordering operator<=>(const WideReal& a, const WideReal& b);
        friend bool operator==(const WideReal& a, const WideReal& b) { return (a <=> b) == 0; }

        // |a - b| / |b|, computed without leaving double range.
        static double rel_diff(const WideReal& a, const WideReal& b);

    private:
        void normalise();
        double mant_ = 0.0;
        i64 exp_ = 0;
    };
}
