#include "palinsieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "palinsieve/palindromes.hpp"
#include "palinsieve/parallel.hpp"

namespace palinsieve
{
    namespace
    {
        const std::vector<u64>& small_primes(u64 limit)
        {
            // one table per limit; map nodes keep references stable
            static std::map<u64, std::vector<u64>> cache;
            static std::mutex mu;
            std::lock_guard<std::mutex> lk(mu);
            auto it = cache.find(limit);
            if (it != cache.end()) return it->second;
            std::vector<u64> primes;
            std::vector<bool> comp(limit + 1, false);
            for (u64 i = 2; i <= limit; ++i)
            {
                if (comp[i]) continue;
                primes.push_back(i);
                for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
            }
            return cache.emplace(limit, std::move(primes)).first->second;
        }

        u64 brent_u64(u64 n, u64 c)
        {
            // Pollard rho with Brent cycle detection and batched gcds
            const auto f = [&](u64 v) { return u64((u128(v) * v + c) % n); };
            u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
            const u64 m = 128;
            u64 r = 1;
            do
            {
                x = y;
                for (u64 i = 0; i < r; ++i) y = f(y);
                u64 k = 0;
                do
                {
                    ys = y;
                    for (u64 i = 0; i < std::min(m, r - k); ++i)
                    {
                        y = f(y);
                        q = mulmod(q, x > y ? x - y : y - x, n);
                    }
                    g = gcd_u64(q, n);
                    k += m;
                } while (k < r && g == 1);
                r *= 2;
            } while (g == 1);
            if (g == n)
            {
                do
                {
                    ys = f(ys);
                    g = gcd_u64(x > ys ? x - ys : ys - x, n);
                } while (g == 1);
            }
            return g;
        }

        void split_u64(u64 n, std::map<u64, u64>& out)
        {
            if (n == 1) return;
            if (is_prime_u64(n))
            {
                ++out[n];
                return;
            }
            for (u64 c = 1;; ++c)
            {
                const u64 d = brent_u64(n, c);
                if (d != n && d != 1)
                {
                    split_u64(d, out);
                    split_u64(n / d, out);
                    return;
                }
            }
        }

        BigInt brent_big(const BigInt& n, unsigned long c)
        {
            BigInt y = 2, x = 2, g = 1, q = 1, ys = 2, t;
            const auto f = [&](BigInt& v)
            {
                v = v * v + c;
                mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
            };
            const u64 m = 128;
            u64 r = 1;
            do
            {
                x = y;
                for (u64 i = 0; i < r; ++i) f(y);
                u64 k = 0;
                do
                {
                    ys = y;
                    for (u64 i = 0; i < std::min(m, r - k); ++i)
                    {
                        f(y);
                        t = abs(x - y);
                        q = q * t % n;
                    }
                    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                    k += m;
                } while (k < r && g == 1);
                r *= 2;
            } while (g == 1);
            if (g == n)
            {
                do
                {
                    f(ys);
                    t = abs(x - ys);
                    mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
                } while (g == 1);
            }
            return g;
        }

        void split_big(const BigInt& n, std::map<BigInt, u64>& out, int rounds)
        {
            if (n == 1) return;
            if (fits_u64(n))
            {
                std::map<u64, u64> small;
                split_u64(to_u64(n), small);
                for (const auto& [p, e] : small) out[BigInt(p)] += e;
                return;
            }
            if (is_probable_prime(n, rounds))
            {
                ++out[n];
                return;
            }
            for (unsigned long c = 1;; ++c)
            {
                const BigInt d = brent_big(n, c);
                if (d != n && d != 1)
                {
                    split_big(d, out, rounds);
                    split_big(n / d, out, rounds);
                    return;
                }
            }
        }
    }

    u64 Factorization::omega_total() const
    {
        u64 s = 0;
        for (const auto& f : factors) s += f.second;
        return s;
    }

    std::optional<BigInt> Factorization::smallest_prime() const
    {
        if (factors.empty()) return std::nullopt;
        return factors.front().first;
    }

    BigInt Factorization::product() const
    {
        BigInt p = 1;
        for (const auto& [q, e] : factors)
        {
            BigInt t;
            mpz_pow_ui(t.get_mpz_t(), q.get_mpz_t(), e);
            p *= t;
        }
        return p;
    }

    bool is_prime_u64(u64 n)
    {
        if (n < 2) return false;
        for (const u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        {
            if (n % p == 0) return n == p;
        }
        u64 d = n - 1;
        int s = 0;
        while (d % 2 == 0)
        {
            d /= 2;
            ++s;
        }
        // bases known to be deterministic for all n < 2^64
        for (const u64 a0 : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL})
        {
            const u64 a = a0 % n;
            if (a == 0) continue;
            u64 x = powmod(a, d, n);
            if (x == 1 || x == n - 1) continue;
            bool composite = true;
            for (int i = 1; i < s; ++i)
            {
                x = mulmod(x, x, n);
                if (x == n - 1)
                {
                    composite = false;
                    break;
                }
            }
            if (composite) return false;
        }
        return true;
    }

    bool is_probable_prime(const BigInt& n, int rounds)
    {
        if (fits_u64(n)) return is_prime_u64(to_u64(n));
        return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
    }

    std::vector<std::pair<u64, u64>> factorize_u64(u64 n, u64 trial_limit)
    {
        if (n == 0) throw DomainError("factorize: n must be >= 1");
        std::vector<std::pair<u64, u64>> out;
        for (const u64 p : small_primes(trial_limit))
        {
            if (p * p > n) break;
            if (n % p != 0) continue;
            u64 e = 0;
            while (n % p == 0)
            {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        if (n > 1)
        {
            std::map<u64, u64> rest;
            split_u64(n, rest);
            for (const auto& pe : rest) out.push_back(pe);
        }
        return out;
    }

    Factorization factorize(const BigInt& n, const FactorConfig& cfg)
    {
        if (sgn(n) < 1) throw DomainError("factorize: n must be >= 1");
        Factorization f;
        if (fits_u64(n))
        {
            for (const auto& [p, e] : factorize_u64(to_u64(n), cfg.trial_limit)) f.factors.emplace_back(BigInt(p), e);
            return f;
        }
        BigInt m = n;
        for (const u64 p : small_primes(cfg.trial_limit))
        {
            u64 e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p))
            {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            if (e > 0) f.factors.emplace_back(BigInt(p), e);
        }
        std::map<BigInt, u64> rest;
        split_big(m, rest, cfg.mr_rounds);
        for (const auto& pe : rest) f.factors.push_back(pe);
        return f;
    }

    double delta_r(u64 r)
    {
        if (r < 2) throw DomainError("delta_r: r must be >= 2");
        return double(r) + std::log(0.75 * (1.0 + std::pow(3.0, -double(r)))) / std::log(3.0);
    }

    double delta6_margin()
    {
        return 4.0 / 21.0 - (1.0 / delta_r(6) + 0.01);
    }

    SieveReport census(u64 b, const BigInt& x, u64 r, u64 theta_inv, std::vector<CensusRow>* rows,
                       const FactorConfig& cfg)
    {
        if (b < 2) throw DomainError("census: base must be >= 2");
        if (sgn(x) < 1) throw DomainError("census: x must be >= 1");
        if (theta_inv < 1) throw DomainError("census: theta_inv must be >= 1");
        SieveReport rep;
        rep.b = b;
        rep.x = x;
        rep.r = r;
        rep.theta_inv = theta_inv;
        rep.z = iroot(x, theta_inv);
        rep.delta6_margin = delta6_margin();

        std::vector<BigInt> pals;
        PalindromeStream s = enumerate({b, Filter::ALL}, x);
        while (s.next()) pals.push_back(s.value());

        const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(256, pals.size()));
        std::vector<u64> counts(chunks, 0);
        std::vector<std::vector<CensusRow>> parts(rows ? chunks : 0);
        const BigInt z = rep.z;
        parallel_for(chunks, [&](std::size_t c)
        {
            const auto [lo, hi] = chunk_range(pals.size(), chunks, c);
            for (std::size_t i = lo; i < hi; ++i)
            {
                const Factorization f = factorize(pals[i], cfg);
                const u64 om = f.omega_total();
                const auto pm = f.smallest_prime();
                const bool ok = om <= r && (!pm || *pm >= z);
                if (ok) ++counts[c];
                if (rows) parts[c].push_back({pals[i], om, pm, ok});
            }
        });
        u64 q = 0;
        for (const u64 c : counts) q += c;
        if (rows)
        {
            rows->clear();
            for (auto& p : parts)
                for (auto& row : p) rows->push_back(std::move(row));
        }
        rep.total_pal = BigInt(pals.size());
        rep.qualifying = BigInt(q);
        rep.ratio = pals.empty() ? 0.0 : double(q) * log_big(x) / double(pals.size());
        return rep;
    }

    HypothesisReport hypothesis_check(u64 b, const BigInt& x, u64 prime_cap)
    {
        if (b < 2) throw DomainError("hypothesis_check: base must be >= 2");
        if (sgn(x) < 1) throw DomainError("hypothesis_check: x must be >= 1");
        HypothesisReport h;
        const u64 m = b * b * b - b;
        BigInt x4;
        mpz_pow_ui(x4.get_mpz_t(), x.get_mpz_t(), 4);
        h.D = iroot(x4, 21);
        const u64 D = to_u64(h.D);

        std::vector<u64> res_count(D + 1, 0);
        PalindromeStream s = enumerate({b, Filter::STAR}, x);
        while (s.next())
        {
            ++h.total_star;
            for (u64 d = 1; d <= D; ++d)
                if (s.mod(d) == 0) ++res_count[d];
        }
        mpq_class sum = 0;
        for (u64 d = 1; d <= D; ++d)
        {
            // r_d = #{n : d | n} - g(d) T, g(d) = 1/d for d coprime to b^3 - b, else 0
            mpq_class rd = mpq_class(BigInt(res_count[d]));
            if (gcd_u64(d, m) == 1) rd -= mpq_class(BigInt(h.total_star), BigInt(d));
            rd.canonicalize();
            sum += abs(rd);
        }
        h.remainder_exact = sum;
        h.remainder_sum = sum.get_d();

        // geometric grid 2, 4, 8, ... <= x; primes below min(x, prime_cap)
        std::vector<u64> grid;
        const u64 xcap = fits_u64(x) ? to_u64(x) : ~u64(0);
        for (u64 u = 2; u <= xcap; u *= 2)
        {
            grid.push_back(u);
            if (u > (~u64(0)) / 2) break;
        }
        h.grid_points = grid.size();
        h.prime_limit = std::min<u64>(xcap, prime_cap);
        h.prime_capped = xcap > prime_cap;
        const std::vector<u64>& primes = small_primes(h.prime_limit);
        // prefix[i] = sum over primes p < grid[i] of -log(1 - g(p))
        std::vector<double> prefix(grid.size(), 0.0);
        std::size_t pi = 0;
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const u64 lim = std::min(grid[i], h.prime_limit + 1);
            while (pi < primes.size() && primes[pi] < lim)
            {
                const u64 p = primes[pi++];
                if (m % p != 0) acc -= std::log1p(-1.0 / double(p));
            }
            prefix[i] = acc;
        }
        h.mertens_K = 0.0;
        h.max_product = 1.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            for (std::size_t j = i + 1; j < grid.size(); ++j)
            {
                const double lp = prefix[j] - prefix[i];
                h.max_product = std::max(h.max_product, std::exp(lp));
                const double k = std::exp(lp) * std::log(double(grid[i])) / std::log(double(grid[j]));
                h.mertens_K = std::max(h.mertens_K, k);
            }
        }
        return h;
    }
}
