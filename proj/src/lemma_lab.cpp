#include "palinsieve/lemma_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_poly.h>

#include "palinsieve/expsums.hpp"
#include "palinsieve/parallel.hpp"

namespace palinsieve
{
    namespace
    {
        constexpr double kPi = std::numbers::pi;

        void require_points(const PointSet& ps)
        {
            if (ps.empty()) throw DomainError("point set must be nonempty");
            for (const double v : ps)
                if (!(v >= 0.0 && v < 1.0)) throw DomainError("points must lie in [0, 1)");
        }

        // e(a n) for an exact angle and a signed integer n
        std::complex<double> expo(const Angle& a, i64 n)
        {
            const u64 den = a.den();
            i64 r = n % i64(den);
            if (r < 0) r += i64(den);
            const u64 k = mulmod(a.num(), u64(r), den);
            const double t = 2.0 * kPi * double(k) / double(den);
            return {std::cos(t), std::sin(t)};
        }

        double phi_real(u64 b, double x)
        {
            const double f = x - std::floor(x);
            if (f == 0.0) return double(b);
            return std::abs(std::sin(kPi * double(b) * f) / std::sin(kPi * f));
        }

        std::string describe(std::initializer_list<std::pair<const char*, std::string>> kv)
        {
            std::ostringstream os;
            bool first = true;
            for (const auto& [k, v] : kv)
            {
                if (!first) os << ' ';
                os << k << '=' << v;
                first = false;
            }
            return os.str();
        }

        std::string num(double v)
        {
            std::ostringstream os;
            os.precision(17);
            os << v;
            return os.str();
        }

        LemmaReport make(std::string id, std::string inputs, double lhs, double rhs)
        {
            LemmaReport r;
            r.id = std::move(id);
            r.inputs = std::move(inputs);
            r.lhs = checked(lhs, "lemma lhs");
            r.rhs = checked(rhs, "lemma rhs");
            r.passed = within(r.lhs, r.rhs);
            return r;
        }

        // Polynomials P_k with g^(k)(t) = P_k(t) (1 - t^2)^{-2k} g(t), g(t) = exp(-1/(1-t^2)).
        std::vector<double> bump_poly(u64 k)
        {
            std::vector<double> p{1.0};
            for (u64 j = 0; j < k; ++j)
            {
                // P' u^2 + 4 j t P u - 2 t P, u = 1 - t^2
                std::vector<double> out(p.size() + 3, 0.0);
                const auto add = [&](std::size_t deg, double c) { out[deg] += c; };
                for (std::size_t i = 1; i < p.size(); ++i)
                {
                    const double d = double(i) * p[i];  // coefficient of t^{i-1} in P'
                    add(i - 1, d);
                    add(i + 1, -2.0 * d);
                    add(i + 3, d);
                }
                for (std::size_t i = 0; i < p.size(); ++i)
                {
                    add(i + 1, 4.0 * double(j) * p[i] - 2.0 * p[i]);
                    add(i + 3, -4.0 * double(j) * p[i]);
                }
                while (out.size() > 1 && out.back() == 0.0) out.pop_back();
                p = std::move(out);
            }
            return p;
        }

        struct BumpParams
        {
            const std::vector<double>* poly;
            u64 k;
        };

        double bump_derivative_abs(double t, void* params)
        {
            const auto* bp = static_cast<const BumpParams*>(params);
            const double u = 1.0 - t * t;
            if (u <= 0.0) return 0.0;
            const double p = gsl_poly_eval(bp->poly->data(), int(bp->poly->size()), t);
            return std::abs(p) * std::exp(-1.0 / u - 2.0 * double(bp->k) * std::log(u));
        }

        // int_{-1}^{1} |g^(k)(t)| dt, split at the real roots of P_k.
        double bump_l1(u64 k)
        {
            const std::vector<double> poly = bump_poly(k);
            std::vector<double> pts{-1.0};
            if (poly.size() > 1)
            {
                const std::size_t n = poly.size();
                std::vector<double> z(2 * (n - 1));
                gsl_poly_complex_workspace* w = gsl_poly_complex_workspace_alloc(n);
                gsl_poly_complex_solve(poly.data(), n, w, z.data());
                gsl_poly_complex_workspace_free(w);
                for (std::size_t i = 0; i + 1 < n; ++i)
                {
                    const double re = z[2 * i], im = z[2 * i + 1];
                    if (std::abs(im) < 1e-9 && re > -1.0 && re < 1.0) pts.push_back(re);
                }
            }
            pts.push_back(1.0);
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

            BumpParams bp{&poly, k};
            gsl_function fn;
            fn.function = &bump_derivative_abs;
            fn.params = &bp;
            gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
            double result = 0.0, err = 0.0;
            gsl_error_handler_t* old = gsl_set_error_handler_off();
            const int status = gsl_integration_qagp(&fn, pts.data(), pts.size(), 1e-14, 1e-11, 2000, ws, &result, &err);
            gsl_set_error_handler(old);
            gsl_integration_workspace_free(ws);
            if (status != GSL_SUCCESS && err > 1e-9 * std::abs(result))
                throw NumericError("bump derivative norm did not converge");
            return result;
        }

        const std::array<double, 5>& bump_norms()
        {
            static const std::array<double, 5> norms = []
            {
                std::array<double, 5> a{};
                for (u64 k = 0; k < 5; ++k) a[k] = bump_l1(k);
                return a;
            }();
            return norms;
        }

        double ergodic_f(ErgodicFunction f, u64 b, u64 num, u64 den)
        {
            switch (f)
            {
            case ErgodicFunction::ONE: return 1.0;
            case ErgodicFunction::PHI_B: return phi_frac(b, num, den) / double(b);
            case ErgodicFunction::CLIPPED_CSC2:
            {
                if (num == 0) return 4.0;
                const double s = std::sin(kPi * double(std::min(num, den - num)) / double(den));
                return std::min(4.0, 1.0 / (s * s));
            }
            }
            return 0.0;
        }

        double ergodic_f_real(ErgodicFunction f, u64 b, double x)
        {
            x -= std::floor(x);
            switch (f)
            {
            case ErgodicFunction::ONE: return 1.0;
            case ErgodicFunction::PHI_B: return phi_real(b, x) / double(b);
            case ErgodicFunction::CLIPPED_CSC2:
            {
                const double s = std::sin(kPi * x);
                if (s == 0.0) return 4.0;
                return std::min(4.0, 1.0 / (s * s));
            }
            }
            return 0.0;
        }

        const char* ergodic_name(ErgodicFunction f)
        {
            switch (f)
            {
            case ErgodicFunction::ONE: return "one";
            case ErgodicFunction::PHI_B: return "phi_b";
            case ErgodicFunction::CLIPPED_CSC2: return "clipped_csc2";
            }
            return "?";
        }

        u64 derive_seed(u64 root, const std::string& id, u64 i)
        {
            // splitmix64 over the root seed, the lemma id and the instance index
            u64 h = root ^ 0x9e3779b97f4a7c15ULL;
            for (const char c : id) h = (h ^ u64(std::uint8_t(c))) * 0x100000001b3ULL;
            h += i * 0x9e3779b97f4a7c15ULL;
            h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
            h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
            return h ^ (h >> 31);
        }

        Angle random_angle(std::mt19937_64& rng, u64 max_den)
        {
            const u64 den = std::uniform_int_distribution<u64>(1, max_den)(rng);
            const u64 n = std::uniform_int_distribution<u64>(0, den - 1)(rng);
            return angle_from(i64(n), den);
        }

        PointSet random_points(std::mt19937_64& rng)
        {
            const u64 n = std::uniform_int_distribution<u64>(1, 200)(rng);
            const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
            std::uniform_real_distribution<double> U(0.0, 1.0);
            PointSet ps(n);
            const double shift = U(rng);
            const double step = U(rng);
            for (u64 i = 0; i < n; ++i)
            {
                double v;
                if (kind == 0) v = U(rng);
                else if (kind == 1) v = std::pow(U(rng), 3.0);      // clustered near 0
                else v = double(i) * step + shift;                   // Kronecker-type
                v -= std::floor(v);
                ps[i] = v < 1.0 ? v : 0.0;
            }
            return ps;
        }
    }

    bool within(double lhs, double rhs)
    {
        return lhs <= rhs + kLemmaTolerance * std::abs(rhs);
    }

    double star_discrepancy(const PointSet& ps)
    {
        require_points(ps);
        PointSet s = ps;
        std::sort(s.begin(), s.end());
        const double n = double(s.size());
        double d = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            d = std::max(d, double(i + 1) / n - s[i]);
            d = std::max(d, s[i] - double(i) / n);
        }
        return d;
    }

    double discrepancy(const PointSet& ps)
    {
        require_points(ps);
        PointSet s = ps;
        std::sort(s.begin(), s.end());
        const double n = double(s.size());
        // F(t) = #{x < t}/N - t at 0, at each point, just right of each point, and at 1;
        // F is monotone between these, so D_N = max_{c <= d} |F(d) - F(c)|.
        std::vector<double> F{0.0};
        std::size_t i = 0;
        while (i < s.size())
        {
            std::size_t j = i;
            while (j < s.size() && s[j] == s[i]) ++j;
            F.push_back(double(i) / n - s[i]);
            F.push_back(double(j) / n - s[i]);
            i = j;
        }
        F.push_back(0.0);
        double lo = F[0], hi = F[0], best = 0.0;
        for (const double f : F)
        {
            best = std::max({best, f - lo, hi - f});
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
        return best;
    }

    LemmaReport check_large_sieve(const std::vector<Angle>& points,
                                  const std::map<i64, std::complex<double>>& coeffs, double delta)
    {
        if (points.empty() || coeffs.empty()) throw PreconditionError("large sieve: need points and coefficients");
        if (!(delta > 0.0 && delta <= 0.5)) throw PreconditionError("large sieve: delta must lie in (0, 1/2]");
        std::vector<double> v;
        for (const auto& a : points) v.push_back(a.value());
        std::sort(v.begin(), v.end());
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            const double gap = (i + 1 < v.size()) ? v[i + 1] - v[i] : v[0] + 1.0 - v[i];
            if (v.size() > 1 && gap < delta * (1.0 - 1e-12))
                throw PreconditionError("large sieve: points are not delta-spaced");
        }
        const i64 lo = coeffs.begin()->first, hi = coeffs.rbegin()->first;
        const double N = double(hi - lo + 1);
        std::vector<double> energy;
        for (const auto& [n, a] : coeffs) energy.push_back(std::norm(a));
        std::vector<double> terms;
        for (const auto& alpha : points)
        {
            std::vector<double> re, im;
            for (const auto& [n, a] : coeffs)
            {
                const std::complex<double> t = a * expo(alpha, n);
                re.push_back(t.real());
                im.push_back(t.imag());
            }
            terms.push_back(std::norm(std::complex<double>(sum_deterministic(re), sum_deterministic(im))));
        }
        const double rhs = (1.0 / delta + N - 1.0) * sum_deterministic(energy);
        return make("large_sieve",
                    describe({{"R", std::to_string(points.size())}, {"N", num(N)}, {"delta", num(delta)}}),
                    sum_deterministic(terms), rhs);
    }

    LemmaReport check_koksma_hlawka(const PointSet& ps, KhFunction f, double d)
    {
        require_points(ps);
        double integral = 0.0, variation = 1.0;
        std::string name;
        std::vector<double> vals;
        for (const double x : ps)
        {
            switch (f)
            {
            case KhFunction::LINEAR: vals.push_back(x); break;
            case KhFunction::TENT: vals.push_back(std::abs(x - 0.5)); break;
            case KhFunction::INDICATOR: vals.push_back(x < d ? 1.0 : 0.0); break;
            }
        }
        switch (f)
        {
        case KhFunction::LINEAR: integral = 0.5; name = "linear"; break;
        case KhFunction::TENT: integral = 0.25; name = "tent"; break;
        case KhFunction::INDICATOR:
            if (!(d >= 0.0 && d <= 1.0)) throw DomainError("indicator endpoint must lie in [0, 1]");
            integral = d;
            variation = d > 0.0 ? 1.0 : 0.0;
            name = "indicator(" + num(d) + ")";
            break;
        }
        const double mean = sum_deterministic(vals) / double(ps.size());
        return make("koksma_hlawka", describe({{"N", std::to_string(ps.size())}, {"f", name}}),
                    std::abs(mean - integral), variation * star_discrepancy(ps));
    }

    LemmaReport check_erdos_turan(const PointSet& ps, u64 H)
    {
        require_points(ps);
        if (H < 1) throw DomainError("erdos_turan: H must be >= 1");
        std::vector<double> terms{1.0 / double(H)};
        for (u64 h = 1; h <= H; ++h)
        {
            std::vector<double> re, im;
            for (const double x : ps)
            {
                const double t = 2.0 * kPi * std::fmod(double(h) * x, 1.0);
                re.push_back(std::cos(t));
                im.push_back(std::sin(t));
            }
            const double m = std::hypot(sum_deterministic(re), sum_deterministic(im)) / double(ps.size());
            terms.push_back(m / double(h));
        }
        LemmaReport r;
        r.id = "erdos_turan";
        r.inputs = describe({{"N", std::to_string(ps.size())}, {"H", std::to_string(H)}});
        r.lhs = discrepancy(ps);
        r.rhs = sum_deterministic(terms);
        r.ratio_form = true;
        r.ratio = r.lhs / r.rhs;
        r.passed = true;
        return r;
    }

    LemmaReport check_vinogradov(double A, double B, double theta, u64 q)
    {
        if (!(A > 0.0 && B > 0.0)) throw DomainError("vinogradov: A and B must be positive");
        if (q < 2) throw DomainError("vinogradov: q must be >= 2");
        const auto term = [&](double x)
        {
            const double s = std::sin(kPi * x);
            if (s == 0.0) return A;
            return std::min(A, B / (s * s));
        };
        std::vector<double> vals;
        for (u64 n = 0; n < q; ++n) vals.push_back(term((double(n) + theta) / double(q)));
        const double dist = std::abs(theta - std::round(theta));
        const double rhs = term(dist / double(q)) + (1.0 - 4.0 / (kPi * kPi)) * B * double(q) * double(q);
        return make("vinogradov",
                    describe({{"A", num(A)}, {"B", num(B)}, {"theta", num(theta)}, {"q", std::to_string(q)}}),
                    sum_deterministic(vals), rhs);
    }

    LemmaReport check_ergodic_integral(ErgodicFunction f, u64 N, u64 b, u64 grid)
    {
        if (b < 2) throw DomainError("ergodic: base must be >= 2");
        if (N < 1 || grid < 1) throw DomainError("ergodic: N and grid must be >= 1");
        // midpoints (2j + 1) / (2 grid); alpha b^n reduced exactly
        const u64 den = 2 * grid;
        std::vector<double> vals(grid);
        for (u64 j = 0; j < grid; ++j)
        {
            u64 a = 2 * j + 1;
            double prod = 1.0;
            for (u64 n = 0; n < N && prod != 0.0; ++n)
            {
                prod *= ergodic_f(f, b, a, den);
                a = mulmod(a, b, den);
            }
            vals[j] = prod;
        }
        const double lhs = sum_deterministic(vals) / double(grid);

        const auto avg = [&](double theta)
        {
            double s = 0.0;
            for (u64 n = 0; n < b; ++n) s += ergodic_f_real(f, b, (double(n) + theta) / double(b));
            return s / double(b);
        };
        // grid scan over theta, then two rounds of local refinement
        const u64 T = 4096;
        double best = 0.0, best_theta = 0.0;
        for (u64 i = 0; i <= T; ++i)
        {
            const double th = double(i) / double(T);
            const double v = avg(th);
            if (v > best)
            {
                best = v;
                best_theta = th;
            }
        }
        double width = 1.0 / double(T);
        for (int round = 0; round < 2; ++round)
        {
            const double c = best_theta;
            for (int i = -500; i <= 500; ++i)
            {
                const double th = std::clamp(c + width * double(i) / 500.0, 0.0, 1.0);
                const double v = avg(th);
                if (v > best)
                {
                    best = v;
                    best_theta = th;
                }
            }
            width /= 500.0;
        }
        const double rhs = std::pow(best, double(N)) + 1e-6;
        return make("ergodic",
                    describe({{"f", ergodic_name(f)}, {"N", std::to_string(N)}, {"b", std::to_string(b)},
                              {"grid", std::to_string(grid)}}),
                    lhs, rhs);
    }

    LemmaReport check_weyl_product(const PointSet& ps, u64 b)
    {
        require_points(ps);
        if (b < 2) throw DomainError("weyl: base must be >= 2");
        double lp = 0.0;
        bool zero = false;
        for (const double x : ps)
        {
            const double v = phi_real(b, x);
            if (v == 0.0)
            {
                zero = true;
                break;
            }
            lp += std::log(v);
        }
        const double ds = star_discrepancy(ps);
        const double n = double(ps.size());
        LemmaReport r;
        r.id = "weyl_product";
        r.inputs = describe({{"N", std::to_string(ps.size())}, {"b", std::to_string(b)}});
        r.lhs = zero ? -std::numeric_limits<double>::infinity() : lp;
        r.rhs = double(b) * n * ds * std::log(2.0 / ds);
        r.ratio_form = true;
        r.ratio = zero ? -std::numeric_limits<double>::infinity() : lp / r.rhs;
        r.passed = true;
        return r;
    }

    double bump_derivative_norm(u64 k, double scale)
    {
        if (k > 4) throw DomainError("smooth sum: k must be at most 4");
        if (!(scale > 0.0)) throw DomainError("smooth sum: scale must be positive");
        return bump_norms()[k] * std::pow(scale, 1.0 - double(k));
    }

    LemmaReport check_smooth_sum(u64 k, const Angle& alpha, double mollifier_scale)
    {
        if (k < 1 || k > 4) throw DomainError("smooth sum: k must lie in 1..4");
        const double s = mollifier_scale;
        if (!(s > 0.0)) throw DomainError("smooth sum: scale must be positive");
        const i64 top = i64(std::ceil(s));
        std::vector<double> re, im;
        for (i64 n = -top; n <= top; ++n)
        {
            const double t = double(n) / s;
            const double u = 1.0 - t * t;
            if (u <= 0.0) continue;
            const double f = std::exp(-1.0 / u);
            const std::complex<double> z = f * expo(alpha, n);
            re.push_back(z.real());
            im.push_back(z.imag());
        }
        const double lhs = std::hypot(sum_deterministic(re), sum_deterministic(im));
        const double rhs1 = bump_derivative_norm(0, s) + bump_derivative_norm(1, s) / 2.0;
        double rhs = rhs1;
        bool ok = within(lhs, rhs1);
        if (!alpha.is_zero())
        {
            const double sn = 2.0 * std::sin(kPi * angle_dist(alpha));
            const double rhs2 = bump_derivative_norm(k, s) / std::pow(sn, double(k));
            ok = ok && within(lhs, rhs2);
            rhs = std::min(rhs1, rhs2);
        }
        LemmaReport r = make("smooth_sum",
                             describe({{"k", std::to_string(k)}, {"alpha", alpha.str()}, {"scale", num(s)}}), lhs, rhs);
        r.passed = ok;
        return r;
    }

    LemmaReport check_pairing(u64 b, const Angle& alpha, u64 beta, u64 gamma)
    {
        if (b < 2) throw DomainError("pairing: base must be >= 2");
        const Angle u1 = angle_scale(alpha, pow_big(b, beta) + pow_big(b, gamma + 1));
        const Angle u2 = angle_scale(alpha, pow_big(b, beta + 1) + pow_big(b, gamma));
        const Angle w = angle_dist_exact(angle_scale(alpha, BigInt(b * b - 1) * pow_big(b, gamma)));
        const u128 dden = u128(w.den()) * (b + 1);
        if (dden >> 64) throw DomainError("pairing: denominator exceeds 64 bits");
        const Angle delta = make_reduced(w.num(), u64(dden));
        return make("pairing",
                    describe({{"b", std::to_string(b)}, {"alpha", alpha.str()}, {"beta", std::to_string(beta)},
                              {"gamma", std::to_string(gamma)}}),
                    phi(b, u1) * phi(b, u2), double(b) * phi(b, delta));
    }

    LemmaReport check_exponential_bound(u64 b, const Angle& a)
    {
        const double d = angle_dist(a);
        // ||a|| <= 1/b, checked exactly
        const Angle da = angle_dist_exact(a);
        if (u128(da.num()) * b > da.den()) throw PreconditionError("exponential bound needs ||a|| <= 1/b");
        const double rhs = double(b) * std::exp(-kPi * kPi / 6.0 * double(b * b - 1) * d * d);
        return make("exponential_bound", describe({{"b", std::to_string(b)}, {"a", a.str()}}), phi(b, a), rhs);
    }

    LemmaReport check_phi_monotone(u64 b, const Angle& a, const Angle& delta)
    {
        const Angle da = angle_dist_exact(a);
        const Angle dd = angle_dist_exact(delta);
        if (delta.num() != dd.num() || delta.den() != dd.den())
            throw PreconditionError("phi monotonicity: delta must lie in [0, 1/2]");
        // delta <= 2/(3b) and ||a|| >= delta, both exact
        if (u128(dd.num()) * 3 * b > u128(2) * dd.den()) throw PreconditionError("phi monotonicity: delta > 2/(3b)");
        if (u128(da.num()) * dd.den() < u128(dd.num()) * da.den())
            throw PreconditionError("phi monotonicity: ||a|| < delta");
        return make("phi_monotone",
                    describe({{"b", std::to_string(b)}, {"a", a.str()}, {"delta", delta.str()}}),
                    phi(b, a), phi(b, delta));
    }

    std::vector<std::string> lemma_ids()
    {
        return {"large_sieve", "koksma_hlawka", "vinogradov", "ergodic",       "smooth_sum",
                "pairing",     "exponential_bound", "phi_monotone", "erdos_turan", "weyl_product"};
    }

    namespace
    {
        LemmaReport run_instance(const std::string& id, u64 seed, const SuiteOptions& opt)
        {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> U(0.0, 1.0);
            const auto pick = [&](u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); };

            if (id == "large_sieve")
            {
                std::vector<Angle> pts;
                double delta;
                if (pick(0, 1) == 0)
                {
                    // Farey fractions of order Q are 1/Q^2-spaced
                    const u64 Q = pick(1, 12);
                    for (u64 q = 1; q <= Q; ++q)
                        for (u64 h = 0; h < q; ++h)
                            if (gcd_u64(h, q) == 1) pts.push_back(angle_from(i64(h), q));
                    delta = std::min(0.5, 1.0 / double(Q * Q));
                }
                else
                {
                    const u64 M = pick(2, 300);
                    const u64 gap = pick(1, std::max<u64>(1, M / 2));
                    std::vector<u64> slots;
                    for (u64 j = 0; j + gap <= M; j += gap) slots.push_back(j);
                    std::shuffle(slots.begin(), slots.end(), rng);
                    slots.resize(pick(1, slots.size()));
                    for (const u64 j : slots) pts.push_back(angle_from(i64(j), M));
                    delta = std::min(0.5, double(gap) / double(M));
                }
                const i64 start = i64(pick(0, 200)) - 100;
                const u64 len = pick(1, 200);
                std::map<i64, std::complex<double>> coeffs;
                for (u64 i = 0; i < len; ++i)
                {
                    if (pick(0, 3) == 0) continue;
                    coeffs[start + i64(i)] = {2.0 * U(rng) - 1.0, 2.0 * U(rng) - 1.0};
                }
                coeffs[start] = {1.0, 0.0};
                return check_large_sieve(pts, coeffs, delta);
            }
            if (id == "koksma_hlawka")
            {
                const PointSet ps = random_points(rng);
                const auto f = static_cast<KhFunction>(pick(0, 2));
                return check_koksma_hlawka(ps, f, U(rng));
            }
            if (id == "vinogradov")
            {
                const double A = std::exp(std::log(1e-3) + U(rng) * std::log(1e5));
                const double B = std::exp(std::log(1e-3) + U(rng) * std::log(1e4));
                const double theta = 10.0 * U(rng) - 5.0;
                return check_vinogradov(A, B, theta, pick(2, 50));
            }
            if (id == "ergodic")
            {
                const auto f = static_cast<ErgodicFunction>(pick(0, 2));
                return check_ergodic_integral(f, pick(1, 4), pick(2, 5), 1 << 17);
            }
            if (id == "smooth_sum")
            {
                const Angle a = pick(0, 9) == 0 ? Angle() : random_angle(rng, 10000);
                return check_smooth_sum(pick(1, 4), a, 0.5 + 60.0 * U(rng));
            }
            if (id == "pairing")
            {
                const u64 b = pick(2, 10);
                return check_pairing(b, random_angle(rng, 10000), pick(0, 6), pick(0, 6));
            }
            if (id == "exponential_bound")
            {
                const u64 b = pick(2, 10);
                const u64 den = pick(b, 10000);
                const u64 n = pick(0, den / b);
                const i64 signed_n = pick(0, 1) ? i64(n) : -i64(n);
                return check_exponential_bound(b, angle_from(signed_n, den));
            }
            if (id == "phi_monotone")
            {
                const u64 b = pick(2, 10);
                const u64 dden = pick(3 * b, 10000);
                const u64 dnum = pick(0, 2 * dden / (3 * b));
                const Angle delta = angle_from(i64(dnum), dden);
                // ||a|| in [delta, 1/2]
                const u64 aden = pick(2, 10000);
                const u64 lo = (dnum * aden + dden - 1) / dden;
                const u64 n = pick(std::min(lo, aden / 2), aden / 2);
                const i64 signed_n = pick(0, 1) ? i64(n) : -i64(n);
                const Angle a = angle_from(signed_n, aden);
                if (u128(angle_dist_exact(a).num()) * delta.den() < u128(delta.num()) * angle_dist_exact(a).den())
                    return check_phi_monotone(b, delta, delta);
                return check_phi_monotone(b, a, delta);
            }
            if (id == "erdos_turan")
            {
                const PointSet ps = random_points(rng);
                LemmaReport r = check_erdos_turan(ps, pick(1, 50));
                r.passed = r.ratio <= opt.erdos_turan_max;
                return r;
            }
            if (id == "weyl_product")
            {
                const PointSet ps = random_points(rng);
                LemmaReport r = check_weyl_product(ps, pick(2, 10));
                r.passed = opt.weyl_a_max <= 0.0 || r.ratio <= opt.weyl_a_max;
                return r;
            }
            throw DomainError("unknown lemma id '" + id + "'");
        }
    }

    std::vector<LemmaReport> run_lemma_suite(const SuiteOptions& opt)
    {
        std::vector<std::string> ids;
        for (const auto& id : lemma_ids())
            if (opt.only.empty() || opt.only == id) ids.push_back(id);
        if (ids.empty()) throw DomainError("unknown lemma id '" + opt.only + "'");
        bump_norms();
        std::vector<LemmaReport> out(ids.size() * opt.instances);
        parallel_for(out.size(), [&](std::size_t i)
        {
            const std::string& id = ids[i / opt.instances];
            const u64 k = i % opt.instances;
            out[i] = run_instance(id, derive_seed(opt.seed, id, k), opt);
        });
        return out;
    }
}
