#include "palinsieve/palindromes.hpp"

#include <algorithm>
#include <cmath>

namespace palinsieve
{
    namespace
    {
        BigInt from_u128(u128 v)
        {
            BigInt r;
            const u64 limbs[2] = {u64(v), u64(v >> 64)};
            mpz_import(r.get_mpz_t(), 2, -1, sizeof(u64), 0, 0, limbs);
            return r;
        }

        u128 to_u128(const BigInt& v)
        {
            u64 limbs[2] = {0, 0};
            std::size_t count = 0;
            mpz_export(limbs, &count, -1, sizeof(u64), 0, 0, v.get_mpz_t());
            return (u128(limbs[1]) << 64) | limbs[0];
        }

        void require_base(u64 b)
        {
            if (b < 2) throw DomainError("base must be >= 2");
            if (b > 2097151) throw DomainError("base too large (b^3 must fit in 64 bits)");
        }
    }

    Filter parse_filter(const std::string& s)
    {
        if (s == "all") return Filter::ALL;
        if (s == "odd") return Filter::ODD_DIGITS;
        if (s == "star") return Filter::STAR;
        throw DomainError("unknown filter '" + s + "' (expected all, odd or star)");
    }

    std::string filter_name(Filter f)
    {
        switch (f)
        {
        case Filter::ALL: return "all";
        case Filter::ODD_DIGITS: return "odd";
        case Filter::STAR: return "star";
        }
        return "?";
    }

    bool is_palindrome(const BigInt& n, u64 b)
    {
        if (sgn(n) <= 0) throw DomainError("is_palindrome: n must be >= 1");
        require_base(b);
        std::vector<u64> d;
        BigInt t = n;
        while (sgn(t) > 0)
        {
            d.push_back(mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), b));
        }
        return std::equal(d.begin(), d.begin() + d.size() / 2, d.rbegin());
    }

    PalindromeStream::PalindromeStream(PalConfig cfg, BigInt x, u64 min_len, u64 max_len)
        : cfg_(cfg), x_(std::move(x)), min_len_(std::max<u64>(min_len, 1)), max_len_(max_len)
    {
        require_base(cfg_.b);
        if (sgn(x_) < 1) throw DomainError("enumerate: x must be >= 1");
        x_huge_ = mpz_sizeinbase(x_.get_mpz_t(), 2) > 126;
        if (!x_huge_) x128_ = to_u128(x_);
        m_ = cfg_.b * cfg_.b * cfg_.b - cfg_.b;
        if (cfg_.filter == Filter::STAR)
        {
            coprime_.resize(m_);
            for (u64 r = 0; r < m_; ++r) coprime_[r] = gcd_u64(r, m_) == 1;
        }
    }

    u64 PalindromeStream::next_length(u64 L) const
    {
        if (cfg_.filter == Filter::ALL) return L + 1;
        return (L % 2 == 1) ? L + 2 : L + 1;
    }

    bool PalindromeStream::start_length(u64 L)
    {
        const u64 b = cfg_.b;
        L_ = L;
        half_ = (L + 1) / 2;
        // b^L must stay below 2^126 for the narrow path
        wide_ = double(L) * std::log2(double(b)) > 125.0;
        digits_.assign(half_, 0);
        digits_[0] = 1;
        w128_.clear();
        wbig_.clear();
        wmod_.assign(half_, 0);
        for (u64 j = 0; j < half_; ++j)
        {
            const u64 hi = L - 1 - j;
            const bool middle = (hi == j);
            if (wide_)
            {
                BigInt w = pow_big(b, j);
                if (!middle) w += pow_big(b, hi);
                wbig_.push_back(w);
            }
            else
            {
                u128 plo = 1, phi = 1;
                for (u64 i = 0; i < j; ++i) plo *= b;
                for (u64 i = 0; i < hi; ++i) phi *= b;
                w128_.push_back(middle ? plo : plo + phi);
            }
            wmod_[j] = middle ? powmod(b, j, m_) : (powmod(b, j, m_) + powmod(b, hi, m_)) % m_;
        }
        // digits_ = (1, 0, ..., 0) ; value is the leading weight
        if (wide_)
            vbig_ = wbig_[0];
        else
            v128_ = w128_[0];
        res_ = wmod_[0];
        return within_bound();
    }

    bool PalindromeStream::step()
    {
        const u64 b = cfg_.b;
        for (u64 j = half_; j-- > 0;)
        {
            if (digits_[j] + 1 < b)
            {
                ++digits_[j];
                if (wide_) vbig_ += wbig_[j];
                else v128_ += w128_[j];
                res_ += wmod_[j];
                if (res_ >= m_) res_ -= m_;
                return true;
            }
            if (j == 0) return false;
            // digit j wraps from b-1 to 0
            if (wide_) vbig_ -= wbig_[j] * (b - 1);
            else v128_ -= w128_[j] * (b - 1);
            res_ = (res_ + m_ - mulmod(wmod_[j], b - 1, m_)) % m_;
            digits_[j] = 0;
        }
        return false;
    }

    bool PalindromeStream::within_bound() const
    {
        if (wide_) return vbig_ <= x_;
        if (x_huge_) return true;
        return v128_ <= x128_;
    }

    bool PalindromeStream::accepted() const
    {
        if (cfg_.filter == Filter::STAR) return coprime_[res_] != 0;
        return true;
    }

    bool PalindromeStream::next()
    {
        if (done_) return false;
        for (;;)
        {
            bool ok;
            if (!started_)
            {
                started_ = true;
                u64 L = min_len_;
                if (cfg_.filter != Filter::ALL && L % 2 == 0) ++L;
                ok = start_length(L);
                if (!ok)
                {
                    done_ = true;
                    return false;
                }
            }
            else if (step())
            {
                ok = within_bound();
                if (!ok)
                {
                    done_ = true;
                    return false;
                }
            }
            else
            {
                const u64 L = next_length(L_);
                if (max_len_ != 0 && L > max_len_)
                {
                    done_ = true;
                    return false;
                }
                if (!start_length(L))
                {
                    done_ = true;
                    return false;
                }
            }
            if (max_len_ != 0 && L_ > max_len_)
            {
                done_ = true;
                return false;
            }
            if (accepted()) return true;
        }
    }

    BigInt PalindromeStream::value() const
    {
        return wide_ ? vbig_ : from_u128(v128_);
    }

    bool PalindromeStream::value_fits_u64() const
    {
        return wide_ ? fits_u64(vbig_) : (v128_ >> 64) == 0;
    }

    u64 PalindromeStream::value_u64() const
    {
        if (!value_fits_u64()) throw DomainError("palindrome exceeds 64 bits");
        return wide_ ? to_u64(vbig_) : u64(v128_);
    }

    u64 PalindromeStream::mod(u64 q) const
    {
        if (wide_) return mpz_fdiv_ui(vbig_.get_mpz_t(), q);
        return u64(v128_ % q);
    }

    PalindromeStream enumerate(const PalConfig& cfg, const BigInt& x)
    {
        return PalindromeStream(cfg, x);
    }

    PalindromeStream enumerate_length(const PalConfig& cfg, u64 L)
    {
        if (L == 0) throw DomainError("enumerate_length: L must be >= 1");
        return PalindromeStream(cfg, pow_big(cfg.b, L) - 1, L, L);
    }

    BigInt count_pi(u64 b, u64 N)
    {
        require_base(b);
        return BigInt(b - 1) * pow_big(b, N);
    }

    double gamma2(u64 b)
    {
        return (b % 2 == 0) ? double(b) / double(b - 1) : 1.0;
    }

    PiStarCount count_pi_star(u64 b, u64 N)
    {
        require_base(b);
        PiStarCount r;
        PalindromeStream s = enumerate_length({b, Filter::STAR}, 2 * N + 1);
        u64 c = 0;
        while (s.next()) ++c;
        r.exact = BigInt(c);
        const u64 m = b * b * b - b;
        r.main_term = gamma2(b) * double(euler_phi(m)) / double(m) * count_pi(b, N).get_d();
        r.residual = double(c) - r.main_term;
        return r;
    }

    std::vector<BigInt> class_counts(const PalConfig& cfg, const BigInt& x, u64 q)
    {
        if (q == 0) throw DomainError("class_counts: q must be >= 1");
        std::vector<u64> c(q, 0);
        PalindromeStream s = enumerate(cfg, x);
        while (s.next()) ++c[s.mod(q)];
        std::vector<BigInt> out;
        out.reserve(q);
        for (const u64 v : c) out.emplace_back(v);
        return out;
    }

    BigInt count_upto(const PalConfig& cfg, const BigInt& x)
    {
        PalindromeStream s = enumerate(cfg, x);
        u64 c = 0;
        while (s.next()) ++c;
        return BigInt(c);
    }
}
