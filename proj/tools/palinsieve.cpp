// palinsieve: command line front end over the library modules.
//
// Exit status: 0 success, 1 a failed explicit-constant check, 2 usage error
// or resource guard. Reports follow docs/report-schema.md.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "palinsieve/calibration.hpp"
#include "palinsieve/equidist.hpp"
#include "palinsieve/expsums.hpp"
#include "palinsieve/lemma_lab.hpp"
#include "palinsieve/moments.hpp"
#include "palinsieve/numeric.hpp"
#include "palinsieve/palindromes.hpp"
#include "palinsieve/parallel.hpp"
#include "palinsieve/sieve.hpp"

using namespace palinsieve;
using json = nlohmann::json;

namespace
{
    constexpr const char* kSchema = "palinsieve.report/1";
    // Factorization is only attempted below this size.
    constexpr u64 kMaxFactorBits = 100;

    struct UsageError : Error
    {
        using Error::Error;
    };

    struct Globals
    {
        u64 base = 10;
        u64 seed = 7;
        unsigned threads = 1;
        std::string out;
        std::string format;     // empty: the subcommand's natural format
    };

    u64 guard_bytes()
    {
        u64 mb = 1024;
        if (const char* env = std::getenv("PALINSIEVE_GUARD_MB"))
        {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0' || v == 0)
                throw UsageError("PALINSIEVE_GUARD_MB must be a positive integer, got '" + std::string(env) + "'");
            mb = v;
        }
        return mb << 20;
    }

    void require_memory(double bytes, const std::string& what, const std::string& hint)
    {
        const u64 cap = guard_bytes();
        if (bytes > double(cap))
        {
            std::ostringstream os;
            os << what << " needs about " << std::llround(bytes / double(1 << 20)) << " MB, over the "
               << (cap >> 20) << " MB guard; " << hint << " or raise PALINSIEVE_GUARD_MB";
            throw SizeGuardError(os.str());
        }
    }

    // Accepts plain integers, a^k and m e k.
    BigInt parse_big(const std::string& s)
    {
        auto whole = [&](const std::string& t)
        {
            BigInt v;
            if (t.empty() || v.set_str(t, 10) != 0) throw UsageError("not an integer: '" + s + "'");
            return v;
        };
        if (const auto p = s.find('^'); p != std::string::npos)
            return pow_big(to_u64(whole(s.substr(0, p))), to_u64(whole(s.substr(p + 1))));
        if (const auto p = s.find_first_of("eE"); p != std::string::npos)
            return whole(s.substr(0, p)) * pow_big(10, to_u64(whole(s.substr(p + 1))));
        return whole(s);
    }

    std::vector<BigInt> parse_list(const std::string& s)
    {
        std::vector<BigInt> out;
        std::stringstream ss(s);
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty()) out.push_back(parse_big(item));
        return out;
    }

    class Output
    {
    public:
        explicit Output(const std::string& path)
        {
            if (!path.empty())
            {
                file_ = std::make_unique<std::ofstream>(path);
                if (!*file_) throw UsageError("cannot open --out path '" + path + "'");
            }
        }
        std::ostream& os() { return file_ ? *file_ : std::cout; }

    private:
        std::unique_ptr<std::ofstream> file_;
    };

    std::string fmt(const Globals& g, const std::string& natural)
    {
        return g.format.empty() ? natural : g.format;
    }

    json report(const std::string& command)
    {
        return json{{"schema", kSchema}, {"command", command}};
    }

    json lemma_json(const LemmaReport& r)
    {
        json j{{"id", r.id}, {"inputs", r.inputs}, {"passed", r.passed}};
        if (r.ratio_form)
        {
            j["ratio"] = r.ratio;
            j["empirical"] = true;
        }
        else
        {
            j["lhs"] = r.lhs;
            j["rhs"] = r.rhs;
        }
        return j;
    }

    // ---- enumerate ----

    struct EnumerateOpts
    {
        std::string max;
        std::string filter = "all";
        u64 mod = 0;
    };

    int run_enumerate(const Globals& g, const EnumerateOpts& o)
    {
        const PalConfig cfg{g.base, parse_filter(o.filter)};
        const BigInt x = parse_big(o.max);
        const std::string f = fmt(g, "text");
        Output out(g.out);
        if (o.mod != 0)
        {
            require_memory(double(o.mod) * 16.0, "class histogram", "lower --mod");
            const auto counts = class_counts(cfg, x, o.mod);
            if (f == "json")
            {
                json j = report("enumerate");
                j["base"] = g.base;
                j["max"] = x.get_str();
                j["filter"] = filter_name(cfg.filter);
                j["mod"] = o.mod;
                json arr = json::array();
                for (const auto& c : counts) arr.push_back(c.get_str());
                j["counts"] = arr;
                out.os() << j.dump() << '\n';
            }
            else
            {
                if (f == "csv") out.os() << "class,count\n";
                for (u64 a = 0; a < counts.size(); ++a) out.os() << a << ',' << counts[a].get_str() << '\n';
            }
            return 0;
        }
        PalindromeStream s = enumerate(cfg, x);
        if (f == "json")
        {
            json j = report("enumerate");
            j["base"] = g.base;
            j["max"] = x.get_str();
            j["filter"] = filter_name(cfg.filter);
            json arr = json::array();
            while (s.next()) arr.push_back(s.value().get_str());
            j["count"] = arr.size();
            j["values"] = arr;
            out.os() << j.dump() << '\n';
            return 0;
        }
        if (f == "csv") out.os() << "n\n";
        while (s.next()) out.os() << s.value().get_str() << '\n';
        return 0;
    }

    // ---- expsum ----

    struct ExpsumOpts
    {
        i64 num = 0;
        u64 den = 1;
        i64 shift_num = 0;
        std::string max;
        u64 prod = 0;
    };

    int run_expsum(const Globals& g, const ExpsumOpts& o)
    {
        if (o.max.empty() == (o.prod == 0)) throw UsageError("expsum needs exactly one of --max or --prod");
        const u64 b = g.base;
        if (b < 2) throw DomainError("base must be >= 2");
        const Angle shift = angle_from(o.shift_num, b * b * b - b);
        const Angle a = angle_add(angle_from(o.num, o.den), shift);
        json j = report("expsum");
        j["base"] = b;
        j["alpha"] = a.str();
        if (!o.max.empty())
        {
            const BigInt x = parse_big(o.max);
            const auto s = pal_exp_sum(b, x, a);
            j["max"] = x.get_str();
            j["re"] = s.real();
            j["im"] = s.imag();
            j["bound"] = decomposition_bound(b, x, a);
        }
        else
        {
            const LogValue v = log_product(big_phi_spec(b, o.prod), a);
            j["N"] = o.prod;
            j["zero"] = v.zero;
            j["logphi"] = v.zero ? json(nullptr) : json(v.log);
        }
        Output out(g.out);
        if (fmt(g, "json") == "csv")
        {
            if (!o.max.empty())
                out.os() << "re,im,bound\n" << j["re"].dump() << ',' << j["im"].dump() << ',' << j["bound"].dump() << '\n';
            else
                out.os() << "logphi\n" << j["logphi"].dump() << '\n';
        }
        else
            out.os() << j.dump() << '\n';
        return 0;
    }

    // ---- moments ----

    struct MomentsOpts
    {
        u64 N = 2;
        u64 K = 1;
        u64 farey = 0;
        i64 beta_num = 0;
        u64 beta_den = 1;
    };

    int run_moments(const Globals& g, const MomentsOpts& o)
    {
        const u64 b = g.base;
        if (b < 2) throw DomainError("base must be >= 2");
        const BigInt span = BigInt(o.K) * pow_big(b, 2 * o.N);
        if (span > kCoeffGuard)
            throw SizeGuardError("K b^{2N} = " + span.get_str() + " exceeds the coefficient guard "
                                 + std::to_string(kCoeffGuard) + "; lower --N or --K");
        require_memory(span.get_d() * 24.0, "coefficient vector", "lower --N or --K");

        json j = report("moments");
        j["base"] = b;
        j["N"] = o.N;
        j["K"] = o.K;
        const BigInt m = moment_exact(b, o.N, o.K);
        j["moment"] = m.get_str();
        j["bound_base"] = moment_bound_base(b, o.N, o.K).get_str();
        j["rho"] = o.N >= 2 ? json(moment_ratio(b, o.N, o.K)) : json(nullptr);
        if (o.farey != 0)
        {
            const Angle beta = angle_from(o.beta_num, o.beta_den);
            const WideReal s = farey_moment_sum(b, o.N, o.K, o.farey, beta);
            const double bound_log = farey_bound_log(b, o.N, o.K, o.farey, calibration::kFareyC);
            j["Q"] = o.farey;
            j["beta"] = beta.str();
            j["farey_sum"] = s.str(15);
            j["farey_log"] = s.is_zero() ? json(nullptr) : json(s.log());
            j["farey_bound_log"] = bound_log;
            j["farey_c"] = calibration::kFareyC;
            j["farey_within"] = s.is_zero() || s.log() <= bound_log;
        }
        Output out(g.out);
        if (fmt(g, "json") == "csv")
        {
            out.os() << "moment,bound_base,rho,farey_sum\n"
                     << m.get_str() << ',' << j["bound_base"].get<std::string>() << ',' << j["rho"].dump() << ','
                     << (o.farey ? j["farey_sum"].get<std::string>() : std::string()) << '\n';
        }
        else
            out.os() << j.dump() << '\n';
        return 0;
    }

    // ---- equidist ----

    struct EquidistOpts
    {
        std::string max;
        double theta = 0.2;
        double eps = 0.01;
        std::string sweep;
    };

    void guard_equidist(const BigInt& x, double theta, double eps)
    {
        const double Q = double(modulus_limit(x, theta, eps));
        require_memory(Q * Q * 4.0 + Q * 64.0, "per-modulus class counters", "lower --max or --theta");
    }

    int run_equidist(const Globals& g, const EquidistOpts& o)
    {
        const u64 b = g.base;
        Output out(g.out);
        const std::string f = fmt(g, "json");
        if (!o.sweep.empty())
        {
            const auto xs = parse_list(o.sweep);
            for (const auto& x : xs) guard_equidist(x, o.theta, o.eps);
            const DecayFit fit = fit_decay_report(b, xs, o.theta, o.eps);
            if (f == "csv")
            {
                out.os() << "x,Q,aggregate,total_pal,ratio\n";
                for (const auto& p : fit.points)
                    out.os() << p.x.get_str() << ',' << p.Q << ',' << json(p.aggregate).dump() << ',' << p.total << ','
                             << json(p.ratio()).dump() << '\n';
                return 0;
            }
            json j = report("equidist");
            j["base"] = b;
            j["theta"] = o.theta;
            j["eps"] = o.eps;
            json pts = json::array();
            for (const auto& p : fit.points)
                pts.push_back({{"x", p.x.get_str()}, {"Q", p.Q}, {"aggregate", p.aggregate},
                               {"total_pal", p.total}, {"ratio", p.ratio()}});
            j["points"] = pts;
            j["fitted_points"] = fit.fitted;
            j["sigma_hat"] = fit.sigma_hat;
            out.os() << j.dump() << '\n';
            return 0;
        }
        if (o.max.empty()) throw UsageError("equidist needs --max or --sweep");
        const BigInt x = parse_big(o.max);
        guard_equidist(x, o.theta, o.eps);
        const ErrorTable t = error_table(b, x, modulus_limit(x, o.theta, o.eps));
        if (f == "csv")
        {
            out.os() << "q,err\n";
            for (const auto& r : t.rows) out.os() << r.q << ',' << json(r.err()).dump() << '\n';
            return 0;
        }
        json j = report("equidist");
        j["base"] = b;
        j["max"] = x.get_str();
        j["theta"] = o.theta;
        j["eps"] = o.eps;
        j["Q"] = t.Q;
        json rows = json::array();
        for (const auto& r : t.rows) rows.push_back({{"q", r.q}, {"err", r.err()}});
        j["rows"] = rows;
        j["aggregate"] = t.aggregate();
        j["total_pal"] = t.total;
        j["sigma_hat"] = nullptr;
        out.os() << j.dump() << '\n';
        return 0;
    }

    // ---- sieve ----

    struct SieveOpts
    {
        std::string max;
        u64 r = 6;
        u64 theta_inv = 21;
        bool hypothesis = false;
    };

    int run_sieve(const Globals& g, const SieveOpts& o)
    {
        const BigInt x = parse_big(o.max);
        if (mpz_sizeinbase(x.get_mpz_t(), 2) > kMaxFactorBits)
            throw SizeGuardError("--max has more than " + std::to_string(kMaxFactorBits)
                                 + " bits; factorization is not attempted at that size");
        // #P_b(x) is about 2 sqrt(x) values; only the csv rows are held in memory.
        const std::string f = fmt(g, "json");
        std::vector<CensusRow> rows;
        if (f == "csv") require_memory(2.0 * std::sqrt(x.get_d()) * 96.0, "census rows", "lower --max");
        SieveReport rep = census(g.base, x, o.r, o.theta_inv, f == "csv" ? &rows : nullptr);
        Output out(g.out);
        if (f == "csv")
        {
            out.os() << "n,omega,pminus,qualifies\n";
            for (const auto& row : rows)
                out.os() << row.n.get_str() << ',' << row.omega << ',' << (row.pminus ? row.pminus->get_str() : "")
                         << ',' << (row.qualifies ? 1 : 0) << '\n';
            return 0;
        }
        json j = report("sieve");
        j["b"] = rep.b;
        j["x"] = rep.x.get_str();
        j["r"] = rep.r;
        j["theta_inv"] = rep.theta_inv;
        j["z"] = rep.z.get_str();
        j["total_pal"] = rep.total_pal.get_str();
        j["qualifying"] = rep.qualifying.get_str();
        j["ratio"] = rep.ratio;
        j["delta6_margin"] = rep.delta6_margin;
        j["remainder_sum"] = nullptr;
        if (o.hypothesis)
        {
            const HypothesisReport h = hypothesis_check(g.base, x);
            j["remainder_sum"] = h.remainder_sum;
            j["hypothesis"] = {{"D", h.D.get_str()},
                               {"total_star", h.total_star},
                               {"remainder_exact", h.remainder_exact.get_str()},
                               {"mertens_K", h.mertens_K},
                               {"max_product", h.max_product},
                               {"grid_points", h.grid_points},
                               {"prime_limit", h.prime_limit},
                               {"prime_capped", h.prime_capped}};
        }
        out.os() << j.dump() << '\n';
        return 0;
    }

    // ---- lemmas ----

    struct LemmasOpts
    {
        std::string only;
        u64 instances = 100;
    };

    int run_lemmas(const Globals& g, const LemmasOpts& o)
    {
        SuiteOptions opt;
        opt.seed = g.seed;
        opt.instances = o.instances;
        opt.only = o.only;
        const auto reports = run_lemma_suite(opt);
        bool failed = false;
        Output out(g.out);
        const bool csv = fmt(g, "json") == "csv";
        if (csv) out.os() << "id,inputs,lhs,rhs,ratio,empirical,passed\n";
        for (const auto& r : reports)
        {
            if (!r.ratio_form && !r.passed) failed = true;
            if (csv)
                out.os() << r.id << ",\"" << r.inputs << "\"," << json(r.lhs).dump() << ',' << json(r.rhs).dump() << ','
                         << json(r.ratio).dump() << ',' << (r.ratio_form ? 1 : 0) << ',' << (r.passed ? 1 : 0) << '\n';
            else
                out.os() << lemma_json(r).dump() << '\n';
        }
        return failed ? 1 : 0;
    }

    // ---- sweep ----

    struct SweepOpts
    {
        std::string kind;
        u64 kmax = 128;
        u64 kstep = 4;
        u64 limit = 100000;
        u64 q = 5;
        u64 shift_num = 0;
        std::string ms = "8,16,32";
        std::string xs;
        double theta = 0.2;
        double eps = 0.01;
    };

    std::vector<u64> parse_u64_list(const std::string& s)
    {
        std::vector<u64> out;
        for (const auto& v : parse_list(s)) out.push_back(to_u64(v));
        return out;
    }

    int run_sweep(const Globals& g, const SweepOpts& o)
    {
        const u64 b = g.base;
        if (b < 2) throw DomainError("base must be >= 2");
        const bool csv = fmt(g, "csv") == "csv";
        Output out(g.out);
        json j = report("sweep");
        j["kind"] = o.kind;
        j["base"] = b;
        json rows = json::array();
        int status = 0;

        if (o.kind == "compositions")
        {
            if (o.kstep == 0) throw UsageError("--kstep must be positive");
            if (csv) out.os() << "K,err_scaled,within\n";
            for (u64 K = o.kstep; K <= o.kmax; K += o.kstep)
            {
                const double e = composition_error_scaled(b, K);
                const bool ok = e <= calibration::kCompC;
                if (csv) out.os() << K << ',' << json(e).dump() << ',' << (ok ? 1 : 0) << '\n';
                rows.push_back({{"K", K}, {"err_scaled", e}, {"within", ok}});
            }
            j["C_comp"] = calibration::kCompC;
        }
        else if (o.kind == "moments")
        {
            require_memory(double(o.limit) * 8.0 * 3.0, "quadrature tables", "lower --limit");
            if (csv) out.os() << "N,K,moment,quadrature,rel_diff,rho\n";
            for (u64 N = 1;; ++N)
            {
                const BigInt span = pow_big(b, 2 * N);
                if (span > o.limit) break;
                const u64 Kmax = o.limit / to_u64(span);
                const auto ex = moment_exact_sweep(b, N, Kmax);
                const auto qu = moment_quadrature_sweep(b, N, Kmax, 4 * Kmax * to_u64(span));
                for (u64 K = 1; K <= Kmax; ++K)
                {
                    const double rel = WideReal::rel_diff(qu[K - 1], WideReal::from_big(ex[K - 1]));
                    const json rho = N >= 2 ? json(moment_ratio(b, N, K)) : json(nullptr);
                    if (rel > 1e-6) status = 1;
                    if (csv)
                        out.os() << N << ',' << K << ',' << ex[K - 1].get_str() << ',' << qu[K - 1].str(15) << ','
                                 << json(rel).dump() << ',' << rho.dump() << '\n';
                    rows.push_back({{"N", N}, {"K", K}, {"moment", ex[K - 1].get_str()},
                                    {"quadrature", qu[K - 1].str(15)}, {"rel_diff", rel}, {"rho", rho}});
                }
            }
        }
        else if (o.kind == "linfty")
        {
            const LinftyFit fit = fit_linfty(b, o.q, o.shift_num, parse_u64_list(o.ms), g.seed);
            const auto Ms = parse_u64_list(o.ms);
            if (csv) out.os() << "M,ratio\n";
            for (std::size_t i = 0; i < Ms.size(); ++i)
            {
                if (csv) out.os() << Ms[i] << ',' << json(fit.ratios[i]).dump() << '\n';
                rows.push_back({{"M", Ms[i]}, {"ratio", fit.ratios[i]}});
            }
            j["q"] = o.q;
            j["sigma_hat"] = fit.sigma_hat;
            j["sampled"] = fit.sampled;
            j["residues_used"] = fit.residues_used;
        }
        else if (o.kind == "census")
        {
            if (csv) out.os() << "x,z,total_pal,qualifying,ratio\n";
            for (const auto& x : parse_list(o.xs))
            {
                if (mpz_sizeinbase(x.get_mpz_t(), 2) > kMaxFactorBits)
                    throw SizeGuardError("census point over " + std::to_string(kMaxFactorBits) + " bits");
                const SieveReport r = census(b, x);
                if (csv)
                    out.os() << x.get_str() << ',' << r.z.get_str() << ',' << r.total_pal.get_str() << ','
                             << r.qualifying.get_str() << ',' << json(r.ratio).dump() << '\n';
                rows.push_back({{"x", x.get_str()}, {"z", r.z.get_str()}, {"total_pal", r.total_pal.get_str()},
                                {"qualifying", r.qualifying.get_str()}, {"ratio", r.ratio}});
            }
        }
        else if (o.kind == "equidist")
        {
            const auto xs = parse_list(o.xs);
            for (const auto& x : xs) guard_equidist(x, o.theta, o.eps);
            const DecayFit fit = fit_decay_report(b, xs, o.theta, o.eps);
            if (csv) out.os() << "x,Q,aggregate,total_pal,ratio\n";
            for (const auto& p : fit.points)
            {
                if (csv)
                    out.os() << p.x.get_str() << ',' << p.Q << ',' << json(p.aggregate).dump() << ',' << p.total << ','
                             << json(p.ratio()).dump() << '\n';
                rows.push_back({{"x", p.x.get_str()}, {"Q", p.Q}, {"aggregate", p.aggregate},
                                {"total_pal", p.total}, {"ratio", p.ratio()}});
            }
            j["sigma_hat"] = fit.sigma_hat;
        }
        else
            throw UsageError("unknown sweep kind '" + o.kind + "'");

        if (!csv)
        {
            j["rows"] = rows;
            out.os() << j.dump() << '\n';
        }
        return status;
    }
}

int main(int argc, char** argv)
{
    CLI::App app{"Palindrome sieve toolkit: enumeration, exponential sums, moments, equidistribution, "
                 "almost-prime census and inequality checks."};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--base,-b", g.base, "Base b >= 2")->capture_default_str();
    app.add_option("--seed", g.seed, "Root seed for randomized suites")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores); output does not depend on it")
        ->capture_default_str();
    app.add_option("--out,-o", g.out, "Write the report here instead of standard output");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));

    EnumerateOpts eo;
    auto* en = app.add_subcommand("enumerate",
                                  "List palindromes <= X or their residue histogram. Exercises the count "
                                  "#Pi_b(2N) = (b-1) b^N and the class counts of P_b*(x, a, q).");
    en->add_option("--max", eo.max, "Upper bound X (accepts 10^9, 1e9)")->required();
    en->add_option("--filter", eo.filter, "all | odd | star")->check(CLI::IsMember({"all", "odd", "star"}));
    en->add_option("--mod", eo.mod, "Print class,count for this modulus instead");

    ExpsumOpts xo;
    auto* ex = app.add_subcommand("expsum",
                                  "Palindromic exponential sum and its decomposition bound (Lemma bounding "
                                  "exponential sums over palindromes), or log Phi_N.");
    ex->add_option("--num", xo.num, "Numerator h of the frequency")->capture_default_str();
    ex->add_option("--den", xo.den, "Denominator q of the frequency")->capture_default_str();
    ex->add_option("--shift-num", xo.shift_num, "Adds k/(b^3 - b) to the frequency")->capture_default_str();
    auto* exmax = ex->add_option("--max", xo.max, "Sum over odd-length palindromes <= X");
    ex->add_option("--prod", xo.prod, "Report log Phi_N at the frequency instead")->excludes(exmax);

    MomentsOpts mo;
    auto* mm = app.add_subcommand("moments",
                                  "Exact 2K-th moment of Phi_N via the coefficient identity, its ratio to "
                                  "b^{2(K-1)N+2} (2K-th moment Proposition) and the Farey large-sieve sum.");
    mm->add_option("--N", mo.N, "Mirror level N")->required();
    mm->add_option("--K", mo.K, "Moment order K")->required();
    mm->add_option("--farey", mo.farey, "Also sum over reduced fractions with q <= Q");
    mm->add_option("--beta-num", mo.beta_num, "Farey shift numerator")->capture_default_str();
    mm->add_option("--beta-den", mo.beta_den, "Farey shift denominator")->capture_default_str();

    EquidistOpts qo;
    auto* eq = app.add_subcommand("equidist",
                                  "Per-modulus equidistribution error of P_b* and its sum over q <= "
                                  "x^{theta-eps} (equidistribution Theorem), with a decay fit over --sweep.");
    eq->add_option("--max", qo.max, "Upper bound X");
    eq->add_option("--theta", qo.theta, "Level exponent")->capture_default_str();
    eq->add_option("--eps", qo.eps, "Exponent loss")->capture_default_str();
    eq->add_option("--sweep", qo.sweep, "Comma separated x values; reports the fitted sigma_hat");

    SieveOpts so;
    auto* sv = app.add_subcommand("sieve",
                                  "Almost-prime census: palindromes with Omega(n) <= r and P^-(n) >= "
                                  "x^{1/theta_inv} (Theorem on palindromes with at most 6 prime factors), "
                                  "with optional sieve hypothesis diagnostics.");
    sv->add_option("--max", so.max, "Upper bound X")->required();
    sv->add_option("--r", so.r, "Omega bound")->capture_default_str();
    sv->add_option("--theta-inv", so.theta_inv, "Smallest prime factor at least x^{1/theta_inv}")
        ->capture_default_str();
    sv->add_flag("--hypothesis", so.hypothesis, "Add remainder sum and Mertens product over D = x^{4/21}");

    LemmasOpts lo;
    auto* lm = app.add_subcommand("lemmas",
                                  "Seeded inequality checks: large sieve, Koksma-Hlawka, Vinogradov-type, "
                                  "ergodic integral, smooth sums, pairing, exponential bound, phi monotonicity; "
                                  "Erdos-Turan and Weyl product as empirical ratios.");
    lm->add_option("--only", lo.only, "Run a single lemma id");
    lm->add_option("--instances", lo.instances, "Instances per lemma")->capture_default_str();

    SweepOpts wo;
    auto* sw = app.add_subcommand("sweep",
                                  "Parameter sweeps: compositions (Gaussian law for r(n;K,b)), moments "
                                  "(Parseval identity), linfty (L-infinity decay of P_M), census, equidist.");
    sw->add_option("kind", wo.kind, "compositions | moments | linfty | census | equidist")
        ->required()
        ->check(CLI::IsMember({"compositions", "moments", "linfty", "census", "equidist"}));
    sw->add_option("--kmax", wo.kmax, "compositions: largest K")->capture_default_str();
    sw->add_option("--kstep", wo.kstep, "compositions: K step")->capture_default_str();
    sw->add_option("--limit", wo.limit, "moments: all (N, K) with K b^{2N} <= limit")->capture_default_str();
    sw->add_option("--q", wo.q, "linfty: modulus")->capture_default_str();
    sw->add_option("--shift-num", wo.shift_num, "linfty: k in k/(b^3 - b)")->capture_default_str();
    sw->add_option("--ms", wo.ms, "linfty: comma separated M values")->capture_default_str();
    sw->add_option("--xs", wo.xs, "census/equidist: comma separated x values");
    sw->add_option("--theta", wo.theta, "equidist: level exponent")->capture_default_str();
    sw->add_option("--eps", wo.eps, "equidist: exponent loss")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try
    {
        guard_bytes();
        set_threads(g.threads);
        if (en->parsed()) return run_enumerate(g, eo);
        if (ex->parsed()) return run_expsum(g, xo);
        if (mm->parsed()) return run_moments(g, mo);
        if (eq->parsed()) return run_equidist(g, qo);
        if (sv->parsed()) return run_sieve(g, so);
        if (lm->parsed()) return run_lemmas(g, lo);
        if (sw->parsed()) return run_sweep(g, wo);
    }
    catch (const Error& e)
    {
        std::cerr << "palinsieve: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "palinsieve: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
