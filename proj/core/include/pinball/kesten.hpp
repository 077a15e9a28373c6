#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pinball/types.hpp"

namespace pinball {

/// Exact rotation number p/q for the integer fast paths.
struct Rational {
    long long num = 0;
    long long den = 1;
};

/// How far the y-walk of the zero-twist skew product wanders.
struct DiscrepancySeries {
    double alpha = 0.0;
    std::optional<Rational> alpha_exact;
    double x0 = 0.0;
    double y0 = 0.0;
    long long steps = 0;
    std::vector<std::pair<long long, double>> y_values;  // decimated (step, y)
    double y_min = 0.0;
    double y_max = 0.0;
    long long zero_crossings = 0;  // k > 0 with y_k = y0
    long long singular_hits = 0;
    bool halted = false;           // stopped early under Halt policy
};

/// Iterate x <- (x + alpha) mod 1, y <- y + sgn(x - 1/2).  The y-walk is kept
/// on the exact integer lattice around y0.
DiscrepancySeries ek_orbit(double alpha, double x0, double y0, long long steps,
                           long long decimation,
                           SingularPolicy policy = SingularPolicy::kHalt);

/// Rational-alpha fast path: the rotation residue is iterated in exact integer
/// arithmetic mod the denominator, so periodicity statements are exact.
DiscrepancySeries ek_orbit(const Rational& alpha, double x0, double y0, long long steps,
                           long long decimation,
                           SingularPolicy policy = SingularPolicy::kHalt);

struct PeriodScanResult {
    bool all_period_two = false;
    long long grid = 0;
    long long tested = 0;
    long long singular_skipped = 0;
};

/// Exact integer check that every grid point (singular line excluded) returns
/// to itself in exactly two steps.
PeriodScanResult period_scan(const Rational& alpha, long long grid);

}  // namespace pinball
