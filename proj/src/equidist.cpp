#include "palinsieve/equidist.hpp"

#include <algorithm>
#include <cmath>

#include "palinsieve/palindromes.hpp"
#include "palinsieve/parallel.hpp"

namespace palinsieve
{
    ClassTracker::ClassTracker(u64 q, Mode mode) : q_(q), mode_(mode), counts_(q, 0)
    {
        if (q == 0) throw DomainError("equidist: q must be >= 1");
        if (mode_ == Mode::HISTOGRAM) freq_.assign(1, q);
    }

    void ClassTracker::insert(u64 residue)
    {
        const u64 c = ++counts_[residue];
        ++total_;
        if (mode_ == Mode::SCAN)
        {
            max_count_ = *std::max_element(counts_.begin(), counts_.end());
            min_count_ = *std::min_element(counts_.begin(), counts_.end());
        }
        else
        {
            if (freq_.size() <= c) freq_.resize(c + 1, 0);
            --freq_[c - 1];
            ++freq_[c];
            max_count_ = std::max(max_count_, c);
            while (freq_[min_count_] == 0) ++min_count_;
        }
        sup_ = std::max(sup_, scaled_deviation());
    }

    u64 ClassTracker::scaled_deviation() const
    {
        const u64 hi = q_ * max_count_ - std::min(q_ * max_count_, total_);
        const u64 lo = total_ - std::min(total_, q_ * min_count_);
        return std::max(hi, lo);
    }

    EquidistResult equidist_exact(u64 b, const BigInt& x, u64 q, ClassTracker::Mode mode)
    {
        ClassTracker t(q, mode);
        PalindromeStream s = enumerate({b, Filter::STAR}, x);
        while (s.next()) t.insert(s.mod(q));
        return {q, t.sup_scaled(), t.total()};
    }

    EquidistResult equidist_exact(u64 b, const BigInt& x, u64 q)
    {
        return equidist_exact(b, x, q, ClassTracker::default_mode(q));
    }

    double equidist_error(u64 b, const BigInt& x, u64 q)
    {
        return equidist_exact(b, x, q).err();
    }

    u64 modulus_limit(const BigInt& x, double theta, double eps)
    {
        if (sgn(x) < 1) throw DomainError("modulus_limit: x must be >= 1");
        const double e = theta - eps;
        if (e <= 0.0) return 1;
        const double Q = std::floor(std::exp(e * log_big(x)) * (1.0 + 1e-12));
        return std::max<u64>(1, u64(Q));
    }

    double ErrorTable::aggregate() const
    {
        std::vector<double> v;
        v.reserve(rows.size());
        for (const auto& r : rows) v.push_back(r.err());
        return sum_deterministic(v);
    }

    ErrorTable error_table(u64 b, const BigInt& x, u64 Q)
    {
        ErrorTable t;
        t.b = b;
        t.x = x;
        t.Q = Q;
        const u64 m = b * b * b - b;
        std::vector<u64> qs;
        for (u64 q = 1; q <= Q; ++q)
            if (gcd_u64(q, m) == 1) qs.push_back(q);

        // fixed partition of the moduli; each part runs its own stream
        const std::size_t parts = std::min<std::size_t>(16, qs.size());
        std::vector<std::vector<EquidistResult>> out(parts);
        std::vector<u64> totals(parts, 0);
        parallel_for(parts, [&](std::size_t p)
        {
            const auto [lo, hi] = chunk_range(qs.size(), parts, p);
            std::vector<ClassTracker> trackers;
            for (std::size_t i = lo; i < hi; ++i)
                trackers.emplace_back(qs[i], ClassTracker::Mode::HISTOGRAM);
            PalindromeStream s = enumerate({b, Filter::STAR}, x);
            u64 n = 0;
            while (s.next())
            {
                ++n;
                for (auto& tr : trackers) tr.insert(s.mod(tr.q()));
            }
            for (const auto& tr : trackers) out[p].push_back({tr.q(), tr.sup_scaled(), tr.total()});
            totals[p] = n;
        });
        for (std::size_t p = 0; p < parts; ++p)
            for (const auto& r : out[p]) t.rows.push_back(r);
        t.total = parts > 0 ? totals[0] : count_upto({b, Filter::STAR}, x).get_ui();
        return t;
    }

    double aggregate_error(u64 b, const BigInt& x, double theta, double eps)
    {
        return error_table(b, x, modulus_limit(x, theta, eps)).aggregate();
    }

    DecayFit fit_decay_report(u64 b, const std::vector<BigInt>& xs, double theta, double eps)
    {
        if (xs.size() < 3) throw FitError("fit_decay: need at least three x values");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (xs[i] <= xs[i - 1]) throw FitError("fit_decay: x values must be strictly increasing");
        DecayFit fit;
        std::vector<double> u, v;
        for (const auto& x : xs)
        {
            const ErrorTable t = error_table(b, x, modulus_limit(x, theta, eps));
            DecayPoint pt;
            pt.x = x;
            pt.Q = t.Q;
            pt.aggregate = t.aggregate();
            pt.total = t.total;
            fit.points.push_back(pt);
            if (pt.aggregate > 0.0 && pt.total > 0)
            {
                u.push_back(std::sqrt(log_big(x)));
                v.push_back(-std::log(pt.ratio()));
            }
        }
        fit.fitted = u.size();
        fit.sigma_hat = ols_slope(u, v);
        return fit;
    }

    double fit_decay(u64 b, const std::vector<BigInt>& xs, double theta, double eps)
    {
        return fit_decay_report(b, xs, theta, eps).sigma_hat;
    }
}
