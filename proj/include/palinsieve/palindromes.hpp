#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "palinsieve/numeric.hpp"

namespace palinsieve
{
    enum class Filter
    {
        ALL,
        ODD_DIGITS,
        STAR    // odd digit count and gcd(n, b^3 - b) = 1
    };

    Filter parse_filter(const std::string& s);
    std::string filter_name(Filter f);

    struct PalConfig
    {
        u64 b = 10;
        Filter filter = Filter::ALL;
    };

    bool is_palindrome(const BigInt& n, u64 b);

    // Ascending stream of palindromes <= x passing the configured filter.
    //
    // A palindrome of length L is fixed by its top ceil(L/2) digits; those are
    // kept as a counter whose last digit moves fastest, so lexicographic order
    // of the counter is numeric order. Each digit j carries the weight
    // b^{L-1-j} + b^j (b^j alone for the middle digit), and stepping the
    // counter adjusts the value by whole weights.
    class PalindromeStream
    {
    public:
        // Lengths restricted to [min_len, max_len]; max_len = 0 means no limit.
        PalindromeStream(PalConfig cfg, BigInt x, u64 min_len = 1, u64 max_len = 0);

        // Advances to the next qualifying palindrome; false once exhausted.
        bool next();

        BigInt value() const;
        bool value_fits_u64() const;
        u64 value_u64() const;
        u64 mod(u64 q) const;
        u64 length() const { return L_; }
        const PalConfig& config() const { return cfg_; }

    private:
        bool start_length(u64 L);
        bool step();
        bool within_bound() const;
        bool accepted() const;
        u64 next_length(u64 L) const;

        PalConfig cfg_;
        BigInt x_;
        u128 x128_ = 0;
        bool x_huge_ = false;
        u64 min_len_ = 1;
        u64 max_len_ = 0;

        u64 L_ = 0;
        u64 half_ = 0;
        std::vector<u64> digits_;
        bool wide_ = false;
        u128 v128_ = 0;
        BigInt vbig_;
        std::vector<u128> w128_;
        std::vector<BigInt> wbig_;

        u64 m_ = 1;     // b^3 - b
        u64 res_ = 0;   // value mod m_
        std::vector<u64> wmod_;
        std::vector<std::uint8_t> coprime_;

        bool started_ = false;
        bool done_ = false;
    };

    PalindromeStream enumerate(const PalConfig& cfg, const BigInt& x);
    // Every palindrome of exactly L digits passing the filter.
    PalindromeStream enumerate_length(const PalConfig& cfg, u64 L);

    // #Pi_b(2N) = (b - 1) b^N, palindromes with 2N + 1 digits.
    BigInt count_pi(u64 b, u64 N);

    struct PiStarCount
    {
        BigInt exact;
        double main_term = 0.0;
        double residual = 0.0;  // exact - main_term
    };

    double gamma2(u64 b);
    PiStarCount count_pi_star(u64 b, u64 N);

    std::vector<BigInt> class_counts(const PalConfig& cfg, const BigInt& x, u64 q);

    // Number of qualifying palindromes <= x.
    BigInt count_upto(const PalConfig& cfg, const BigInt& x);
}
