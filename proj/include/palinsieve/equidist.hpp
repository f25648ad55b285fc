#pragma once

#include <vector>

#include "palinsieve/numeric.hpp"

namespace palinsieve
{
    // Tracks max_a |count_a - total/q| for q residue classes as values arrive.
    // Stored scaled by q so everything stays integral.
    class ClassTracker
    {
    public:
        enum class Mode
        {
            SCAN,       // O(q) rescan per insertion
            HISTOGRAM   // O(1) via a histogram of class counts
        };

        ClassTracker(u64 q, Mode mode);
        static Mode default_mode(u64 q) { return q <= 1000 ? Mode::SCAN : Mode::HISTOGRAM; }

        void insert(u64 residue);
        // q * max_a |count_a - total/q| for the current state.
        u64 scaled_deviation() const;
        u64 sup_scaled() const { return sup_; }
        u64 total() const { return total_; }
        u64 q() const { return q_; }

    private:
        u64 q_;
        Mode mode_;
        u64 total_ = 0;
        std::vector<u64> counts_;
        u64 max_count_ = 0;
        u64 min_count_ = 0;
        std::vector<u64> freq_;     // freq_[v] = classes holding exactly v
        u64 sup_ = 0;
    };

    struct EquidistResult
    {
        u64 q = 1;
        u64 scaled = 0;     // q * err, an integer
        u64 total = 0;      // #P_b*(x)
        double err() const { return double(scaled) / double(q); }
    };

    // sup_{y<=x} max_a |#P*(y,a,q) - #P*(y)/q|.
    EquidistResult equidist_exact(u64 b, const BigInt& x, u64 q);
    EquidistResult equidist_exact(u64 b, const BigInt& x, u64 q, ClassTracker::Mode mode);
    double equidist_error(u64 b, const BigInt& x, u64 q);

    // floor(x^{theta - eps}).
    u64 modulus_limit(const BigInt& x, double theta, double eps);

    struct ErrorTable
    {
        u64 b = 2;
        BigInt x;
        u64 Q = 1;
        u64 total = 0;
        std::vector<EquidistResult> rows;   // q <= Q with gcd(q, b^3 - b) = 1
        double aggregate() const;
    };

    ErrorTable error_table(u64 b, const BigInt& x, u64 Q);
    double aggregate_error(u64 b, const BigInt& x, double theta, double eps);

    struct DecayPoint
    {
        BigInt x;
        u64 Q = 1;
        double aggregate = 0.0;
        u64 total = 0;
        double ratio() const { return total == 0 ? 0.0 : aggregate / double(total); }
    };

    struct DecayFit
    {
        std::vector<DecayPoint> points;
        double sigma_hat = 0.0;
        std::size_t fitted = 0;     // points with a nonzero aggregate
    };

    // OLS slope of -log(aggregate / #P*) against sqrt(log x). Points whose
    // aggregate is zero (no admissible q > 1) carry no log and are left out.
    DecayFit fit_decay_report(u64 b, const std::vector<BigInt>& xs, double theta, double eps);
    double fit_decay(u64 b, const std::vector<BigInt>& xs, double theta, double eps);
}
