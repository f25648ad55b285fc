#pragma once

// Empirical constants frozen from tools/calibrate. Each is the worst case of
// its sweep rounded up; rerun the tool after changing any generator.

namespace palinsieve::calibration
{
    // max_n |r/b^K - gauss| * b K^{3/2}, b in {2,3,5,10}, K = 4..128 step 4 (worst 0.398549)
    inline constexpr double kCompC = 0.3986;
    // |#Pi* - main| / (b^2 tau(b^2-1)), b <= 10, N <= 6 (worst 1/12)
    inline constexpr double kPiStarC = 0.0834;
    // Farey moment excess; the seeded grid needs no excess factor at all
    inline constexpr double kFareyC = 0.0;
    // Weyl exponent. Sweep worst 0.5242; the all-zero input at b = 3 gives
    // log 3 / (3 log 2) = 0.5283, so the cap sits just above that.
    inline constexpr double kWeylAMax = 0.53;
    inline constexpr double kErdosTuranMax = 4.0;
}
