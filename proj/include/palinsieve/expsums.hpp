#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "palinsieve/numeric.hpp"

namespace palinsieve
{
    // phi_b(a) = |sum_{m<b} e(a m)|: b at a = 0, else |sin(pi b a) / sin(pi a)|.
    double phi(u64 b, const Angle& a);
    // Same on an unreduced fraction num/den with num < den.
    double phi_frac(u64 b, u64 num, u64 den);

    // Log of a nonnegative product, with an exact zero state.
    struct LogValue
    {
        double log = 0.0;
        bool zero = false;

        static LogValue Zero() { return {0.0, true}; }
        double value() const;
        WideReal wide() const;
        friend bool operator<(const LogValue& a, const LogValue& b)
        {
            if (a.zero) return !b.zero;
            if (b.zero) return false;
            return a.log < b.log;
        }
        friend bool operator==(const LogValue& a, const LogValue& b)
        {
            return a.zero == b.zero && (a.zero || a.log == b.log);
        }
    };

    // prod_{lo <= n <= hi} phi_b((a + shift)(b^n + b^{2N-n})); lo > hi is the empty product.
    struct ProductSpec
    {
        u64 b = 2;
        u64 N = 0;
        u64 lo = 1;
        u64 hi = 0;
        Angle shift;
    };

    // Phi_N: exponents 1..N-1.
    ProductSpec big_phi_spec(u64 b, u64 N, Angle shift = {});
    // P_M with mirror level N: exponents 1..M, M <= 2N.
    ProductSpec p_m_spec(u64 b, u64 N, u64 M, Angle shift = {});

    LogValue log_product(const ProductSpec& spec, const Angle& a);

    // Sum over odd-length palindromes n <= x of e(a n).
    std::complex<double> pal_exp_sum(u64 b, const BigInt& x, const Angle& a);

    // b^2 sum_{0 <= N <= log_b(x)/2} sum_{0 <= M <= N} Phi_M(a b^{N-M}).
    double decomposition_bound(u64 b, const BigInt& x, const Angle& a);

    // |sum_{1<=n<=M} e_q(aa b^n + k bbar^n)|, bbar the inverse of b mod q.
    double s_q(u64 b, u64 q, u64 M, i64 aa, i64 k);
    // M tau(q) sqrt(q) / ord_q(b) + ord_q(b).
    double s_q_bound(u64 b, u64 q, u64 M);

    struct LinftyFit
    {
        double sigma_hat = 0.0;
        std::vector<double> ratios;     // max_h P_M / b^M per M
        bool sampled = false;           // h sampled rather than enumerated
        u64 residues_used = 0;
    };

    // For each M: max over units h mod q of P_M(h/q + k/(b^3-b)) / b^M with
    // mirror level N = M. sigma_hat is the OLS slope of -log(ratio) log q
    // against M.
    LinftyFit fit_linfty(u64 b, u64 q, u64 k, const std::vector<u64>& Ms, u64 seed = 1);
    double fit_linfty_decay(u64 b, u64 q, u64 k, const std::vector<u64>& Ms);
}
