#include "palinsieve/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "palinsieve/expsums.hpp"
#include "palinsieve/parallel.hpp"

namespace palinsieve
{
    namespace
    {
        void require_bk(u64 b, u64 K)
        {
            if (b < 2) throw DomainError("base must be >= 2");
            if (K < 1) throw DomainError("K must be >= 1");
        }

        // K b^{2N}, saturating at the guard.
        void require_coeff_guard(u64 b, u64 N, u64 K)
        {
            const BigInt size = BigInt(K) * pow_big(b, 2 * N);
            if (size > BigInt(kCoeffGuard))
                throw SizeGuardError("K*b^(2N) = " + size.get_str() + " exceeds the coefficient guard " +
                                     std::to_string(kCoeffGuard));
        }

        // Sum over d in [-R, R]^{N-1} with sum d_m p_m = 0 of prod c(|d_m|),
        // c(d) = r(R + d; 2K, b). Positions are scanned largest first and each
        // partial sum is pruned against what the remaining positions can reach.
        class AutocorrelationSum
        {
        public:
            AutocorrelationSum(const std::vector<u64>& positions, i64 R, const CompositionRow& row)
                : R_(R), row_(row)
            {
                for (const u64 p : positions) p_.push_back(i64(p));
                std::sort(p_.begin(), p_.end(), std::greater<>());
                reach_.assign(p_.size() + 1, 0);
                for (std::size_t j = p_.size(); j-- > 0;) reach_[j] = reach_[j + 1] + __int128(R) * p_[j];
                d_.assign(p_.size(), 0);
            }

            BigInt run()
            {
                total_ = 0;
                visit(0, 0);
                return total_;
            }

        private:
            static i64 floor_div(__int128 a, i64 b)
            {
                __int128 q = a / b;
                if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
                return i64(q);
            }

            void visit(std::size_t j, __int128 S)
            {
                const i64 p = p_[j];
                if (j + 1 == p_.size())
                {
                    if (S % p != 0) return;
                    const __int128 d = -S / p;
                    if (d > R_ || d < -R_) return;
                    d_[j] = i64(d);
                    leaf();
                    return;
                }
                const __int128 rest = reach_[j + 1];
                const i64 lo = std::max<i64>(-R_, -floor_div(rest + S, p));
                const i64 hi = std::min<i64>(R_, floor_div(rest - S, p));
                for (i64 d = lo; d <= hi; ++d)
                {
                    d_[j] = d;
                    visit(j + 1, S + __int128(d) * p);
                }
            }

            void leaf()
            {
                mpz_set(prod_.get_mpz_t(), row_.at(R_ - std::abs(d_[0])).get_mpz_t());
                for (std::size_t i = 1; i < d_.size(); ++i)
                    mpz_mul(prod_.get_mpz_t(), prod_.get_mpz_t(), row_.at(R_ - std::abs(d_[i])).get_mpz_t());
                mpz_add(total_.get_mpz_t(), total_.get_mpz_t(), prod_.get_mpz_t());
            }

            std::vector<i64> p_;
            std::vector<__int128> reach_;
            std::vector<i64> d_;
            i64 R_;
            const CompositionRow& row_;
            BigInt total_, prod_;
        };
    }

    CompositionRow::CompositionRow(u64 b) : b_(b)
    {
        if (b < 2) throw DomainError("base must be >= 2");
        half_.assign(1, BigInt(1));
    }

    const BigInt& CompositionRow::at(i64 n) const
    {
        const i64 deg = i64(degree());
        if (n < 0 || n > deg) return zero_;
        return half_[std::size_t(std::min(n, deg - n))];
    }

    void CompositionRow::advance()
    {
        const i64 deg = i64(degree()) + i64(b_ - 1);
        const std::size_t len = std::size_t(deg / 2 + 1);
        if (scratch_.size() < len) scratch_.resize(len);
        // new[i] = new[i-1] + old[i] - old[i-b]
        for (std::size_t i = 0; i < len; ++i)
        {
            mpz_srcptr add = at(i64(i)).get_mpz_t();
            if (i == 0)
                mpz_set(scratch_[0].get_mpz_t(), add);
            else
                mpz_add(scratch_[i].get_mpz_t(), scratch_[i - 1].get_mpz_t(), add);
            if (i >= b_) mpz_sub(scratch_[i].get_mpz_t(), scratch_[i].get_mpz_t(), at(i64(i - b_)).get_mpz_t());
        }
        ++K_;
        std::swap(half_, scratch_);
        half_.resize(len);
    }

    CompositionTable composition_table(u64 b, u64 K)
    {
        require_bk(b, K);
        CompositionRow row(b);
        for (u64 k = 0; k < K; ++k) row.advance();
        CompositionTable t;
        t.b = b;
        t.K = K;
        t.values.reserve(row.degree() + 1);
        for (u64 n = 0; n <= row.degree(); ++n) t.values.push_back(row.at(i64(n)));
        return t;
    }

    BigInt r_exact(i64 n, u64 K, u64 b)
    {
        require_bk(b, K);
        if (n < 0 || u64(n) > (b - 1) * K) return 0;
        return composition_table(b, K).values[std::size_t(n)];
    }

    BigInt r_inclusion_exclusion(i64 n, u64 K, u64 b)
    {
        require_bk(b, K);
        if (n < 0 || u64(n) > (b - 1) * K) return 0;
        BigInt total = 0, c1, c2;
        for (u64 j = 0; j <= K && i64(j * b) <= n; ++j)
        {
            mpz_bin_uiui(c1.get_mpz_t(), K, j);
            mpz_bin_uiui(c2.get_mpz_t(), u64(n) - j * b + K - 1, K - 1);
            if (j % 2 == 0) total += c1 * c2;
            else total -= c1 * c2;
        }
        return total;
    }

    double r_gauss(double n, u64 K, u64 b)
    {
        require_bk(b, K);
        const double s = double(b * b - 1) * double(K);
        const double c = n - double(b - 1) * double(K) / 2.0;
        return checked(std::sqrt(6.0 / (std::numbers::pi * s)) * std::exp(-6.0 / s * c * c), "r_gauss");
    }

    double composition_error_scaled(u64 b, u64 K)
    {
        const CompositionTable t = composition_table(b, K);
        const BigInt total = pow_big(b, K);
        double worst = 0.0;
        for (std::size_t n = 0; n < t.values.size(); ++n)
        {
            const double exact = mpq_class(t.values[n], total).get_d();
            worst = std::max(worst, std::abs(exact - r_gauss(double(n), K, b)));
        }
        return worst * double(b) * std::pow(double(K), 1.5);
    }

    std::vector<u64> mirror_positions(u64 b, u64 N)
    {
        std::vector<u64> p;
        for (u64 m = 1; m + 1 <= N; ++m) p.push_back(to_u64(pow_big(b, m) + pow_big(b, 2 * N - m)));
        return p;
    }

    CoeffVector coeff_vector(u64 b, u64 N, u64 K)
    {
        require_bk(b, K);
        CoeffVector cv;
        cv.b = b;
        cv.N = N;
        cv.K = K;
        if (N <= 1)
        {
            cv.coeffs[0] = 1;
            return cv;
        }
        require_coeff_guard(b, N, K);
        const std::vector<u64> pos = mirror_positions(b, N);
        const CompositionTable w = composition_table(b, K);
        const u64 R = (b - 1) * K;
        u64 degree = 0;
        for (const u64 p : pos) degree += R * p;

        if (degree + 1 <= 1000000)
        {
            std::vector<BigInt> cur(degree + 1), nxt(degree + 1);
            cur[0] = 1;
            u64 reach = 0;
            for (const u64 p : pos)
            {
                for (u64 l = 0; l <= reach + R * p; ++l) nxt[l] = 0;
                for (u64 l = 0; l <= reach; ++l)
                {
                    if (sgn(cur[l]) == 0) continue;
                    for (u64 v = 0; v <= R; ++v)
                        mpz_addmul(nxt[l + v * p].get_mpz_t(), cur[l].get_mpz_t(), w.values[v].get_mpz_t());
                }
                reach += R * p;
                std::swap(cur, nxt);
            }
            for (u64 l = 0; l <= degree; ++l)
                if (sgn(cur[l]) != 0) cv.coeffs.emplace(l, cur[l]);
            return cv;
        }

        std::map<u64, BigInt> cur{{0, BigInt(1)}};
        for (const u64 p : pos)
        {
            std::map<u64, BigInt> nxt;
            for (const auto& [l, a] : cur)
                for (u64 v = 0; v <= R; ++v)
                    mpz_addmul(nxt[l + v * p].get_mpz_t(), a.get_mpz_t(), w.values[v].get_mpz_t());
            cur = std::move(nxt);
        }
        cv.coeffs = std::move(cur);
        return cv;
    }

    BigInt sum_of_squares(const CoeffVector& cv)
    {
        BigInt s = 0;
        for (const auto& [l, a] : cv.coeffs) mpz_addmul(s.get_mpz_t(), a.get_mpz_t(), a.get_mpz_t());
        return s;
    }

    BigInt moment_exact(u64 b, u64 N, u64 K)
    {
        require_bk(b, K);
        if (N <= 1) return 1;
        require_coeff_guard(b, N, K);
        CompositionRow row(b);
        for (u64 k = 0; k < 2 * K; ++k) row.advance();
        AutocorrelationSum acc(mirror_positions(b, N), i64((b - 1) * K), row);
        return acc.run();
    }

    std::vector<BigInt> moment_exact_sweep(u64 b, u64 N, u64 Kmax)
    {
        require_bk(b, Kmax);
        if (N <= 1) return std::vector<BigInt>(Kmax, BigInt(1));
        require_coeff_guard(b, N, Kmax);
        const std::vector<u64> pos = mirror_positions(b, N);
        CompositionRow row(b);
        std::vector<BigInt> out;
        out.reserve(Kmax);
        for (u64 K = 1; K <= Kmax; ++K)
        {
            row.advance();
            row.advance();
            AutocorrelationSum acc(pos, i64((b - 1) * K), row);
            out.push_back(acc.run());
        }
        return out;
    }

    std::vector<WideReal> moment_quadrature_sweep(u64 b, u64 N, u64 Kmax, u64 grid)
    {
        require_bk(b, Kmax);
        if (N <= 1) return std::vector<WideReal>(Kmax, WideReal(1.0));
        const BigInt need = BigInt(4) * BigInt(Kmax) * pow_big(b, 2 * N);
        if (BigInt(grid) < need)
            throw GridTooCoarse("grid " + std::to_string(grid) + " below 4*K*b^(2N) = " + need.get_str());
        if (grid > (u64(1) << 32)) throw SizeGuardError("quadrature grid above 2^32 points");

        const std::vector<u64> pos = mirror_positions(b, N);
        u64 g = 0;
        for (const u64 p : pos) g = gcd_u64(g, p);
        // Phi_N(alpha) depends on g*alpha only, so the grid folds onto G/gcd(g, G) points.
        const u64 gp = gcd_u64(g, grid);
        const u64 G = grid / gp;
        std::vector<u64> mult;
        for (const u64 p : pos) mult.push_back((p / g) % G);

        std::vector<double> sines(G / 2 + 1);
        for (u64 r = 0; r <= G / 2; ++r) sines[r] = std::sin(std::numbers::pi * double(r) / double(G));
        const auto phi_table = [&](u64 num) -> double
        {
            if (num == 0) return double(b);
            const u64 r = (b % G) * num % G;
            if (r == 0) return 0.0;
            return sines[std::min(r, G - r)] / sines[std::min(num, G - num)];
        };

        // Phi is even, so only 0 <= i <= G/2 is evaluated, with weight 2 off the axis.
        const u64 half = G / 2;
        std::vector<std::pair<double, double>> terms(half + 1);
        const double inv_b = 1.0 / double(b);
        for (u64 i = 0; i <= half; ++i)
        {
            double r = 1.0;
            for (const u64 c : mult) r *= phi_table(i * c % G) * inv_b;
            const double w = (i == 0 || 2 * i == G) ? 1.0 : 2.0;
            terms[i] = {r * r, w};
        }
        std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

        std::vector<double> r2(terms.size()), pw(terms.size());
        for (std::size_t i = 0; i < terms.size(); ++i)
        {
            r2[i] = terms[i].first;
            pw[i] = terms[i].second;
        }
        std::size_t active = terms.size();
        std::vector<WideReal> out;
        out.reserve(Kmax);
        for (u64 K = 1; K <= Kmax; ++K)
        {
            for (std::size_t i = 0; i < active; ++i) pw[i] *= r2[i];
            // terms below 1e-40 (the i = 0 term is exactly 1) cannot move the mean
            while (active > 1 && pw[active - 1] < 1e-40) --active;
            const double mean = sum_deterministic(std::span<const double>(pw.data(), active)) / double(G);
            out.push_back(WideReal::from_big(pow_big(b, 2 * K * (N - 1))) * WideReal(mean));
        }
        return out;
    }

    WideReal moment_quadrature(u64 b, u64 N, u64 K, u64 grid)
    {
        return moment_quadrature_sweep(b, N, K, grid).back();
    }

    BigInt moment_bound_base(u64 b, u64 N, u64 K)
    {
        return pow_big(b, 2 * (K - 1) * N + 2);
    }

    double moment_ratio(u64 b, u64 N, u64 K)
    {
        if (N <= 1) throw PreconditionError("moment_ratio: N must be >= 2");
        const BigInt m = moment_exact(b, N, K);
        const double l = log_big(m) - log_big(moment_bound_base(b, N, K));
        return checked(std::exp(l / double(2 * N)) - 1.0, "moment_ratio");
    }

    WideReal farey_moment_sum(u64 b, u64 N, u64 K, u64 Q, const Angle& beta)
    {
        require_bk(b, K);
        if (Q < 1) throw DomainError("farey_moment_sum: Q must be >= 1");
        std::vector<WideReal> per_q(Q);
        const ProductSpec spec = big_phi_spec(b, N, beta);
        parallel_for(Q, [&](std::size_t i)
        {
            const u64 q = i + 1;
            WideReal s;
            for (u64 h = 0; h < q; ++h)
            {
                if (gcd_u64(h, q) != 1) continue;
                const LogValue lv = log_product(spec, angle_from(i64(h), q));
                if (!lv.zero) s += WideReal::from_log(2.0 * double(K) * lv.log);
            }
            per_q[i] = s;
        });
        WideReal total;
        for (const auto& s : per_q) total += s;
        return total;
    }

    double farey_bound_log(u64 b, u64 N, u64 K, u64 Q, double c)
    {
        const double lb = std::log(double(b));
        const double head = std::log(double(Q) * double(Q) + double(K) * std::exp(2.0 * double(N) * lb));
        const double base = double(2 * (K - 1) * N + 2) * lb;
        const double excess = 2.0 * double(N) *
            std::log1p(c / std::sqrt(double(K)) + c * double(b * b) / double(K));
        return head + base + excess;
    }

    double farey_required_c(u64 b, u64 N, u64 K, u64 Q, const WideReal& sum)
    {
        if (sum.is_zero()) return 0.0;
        const double gap = sum.log() - farey_bound_log(b, N, K, Q, 0.0);
        if (gap <= 0.0) return 0.0;
        return std::expm1(gap / double(2 * N)) / (1.0 / std::sqrt(double(K)) + double(b * b) / double(K));
    }
}
