// Recomputes the empirical constants frozen in include/palinsieve/calibration.hpp.
// Each value is the worst case over a fixed seeded sweep; the frozen
// constants round these up.

#include <cmath>
#include <cstdio>
#include <random>

#include "palinsieve/lemma_lab.hpp"
#include "palinsieve/moments.hpp"
#include "palinsieve/numeric.hpp"
#include "palinsieve/palindromes.hpp"

using namespace palinsieve;

int main()
{
    // compositions: b in {2,3,5,10}, K = 4, 8, ..., 128
    double comp = 0.0;
    for (const u64 b : {2, 3, 5, 10})
        for (u64 K = 4; K <= 128; K += 4) comp = std::max(comp, composition_error_scaled(b, K));
    std::printf("C_comp          %.9f\n", comp);

    // |#Pi* - main term| / (b^2 tau(b^2 - 1)) over b <= 10, N <= 6
    double star = 0.0;
    for (u64 b = 2; b <= 10; ++b)
        for (u64 N = 0; N <= 6; ++N)
        {
            const PiStarCount c = count_pi_star(b, N);
            star = std::max(star, std::abs(c.residual) / double(b * b * divisor_count(b * b - 1)));
        }
    std::printf("C_pi_star       %.9f\n", star);

    // Farey moment constant over the acceptance grid b <= 3, N <= 4, K <= 3, Q <= 32
    double farey = 0.0;
    std::mt19937_64 rng(2024);
    for (const u64 b : {2, 3})
        for (u64 N = 2; N <= 4; ++N)
            for (u64 K = 1; K <= 3; ++K)
                for (const u64 Q : {1, 2, 4, 8, 16, 32})
                    for (int rep = 0; rep < 3; ++rep)
                    {
                        const u64 den = std::uniform_int_distribution<u64>(1, 1000)(rng);
                        const Angle beta = angle_from(i64(std::uniform_int_distribution<u64>(0, den - 1)(rng)), den);
                        const WideReal s = farey_moment_sum(b, N, K, Q, beta);
                        farey = std::max(farey, farey_required_c(b, N, K, Q, s));
                    }
    std::printf("c_farey         %.9f\n", farey);

    // Weyl exponent and Erdos-Turan ratio over the lemma suite generators
    double weyl = -1e300, et = 0.0;
    for (const u64 seed : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10})
    {
        SuiteOptions opt;
        opt.seed = seed;
        opt.instances = 200;
        opt.only = "weyl_product";
        for (const auto& r : run_lemma_suite(opt)) weyl = std::max(weyl, r.ratio);
        opt.only = "erdos_turan";
        for (const auto& r : run_lemma_suite(opt)) et = std::max(et, r.ratio);
    }
    std::printf("A_hat_max       %.9f\n", weyl);
    std::printf("erdos_turan_max %.9f\n", et);
    return 0;
}
