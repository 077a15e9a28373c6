#pragma once

#include <string>
#include <vector>

#include "pinball/types.hpp"

namespace pinball {

/// action^z under the library's power policy: repeated multiplication for
/// integer z, exp(z ln(action)) for fractional z (requires action > 0).
double action_power(double action, double z);

/// One step of the general alpha-z map:
///   angle' = (angle + alpha * action^z) mod circle_len,
///   action' = action +/- 1 by which half-circle angle' lands in.
CylState step_az(const MapParams& params, const CylState& s);

/// One step of the pinball map (z = -1 on the circle of length 2), with the
/// twist computed as a single division alpha/action.
CylState step_pinball(const MapParams& params, const CylState& s);

/// Unique preimage under the pinball map.
CylState step_pinball_inverse(const MapParams& params, const CylState& s);

/// One period of the saw-tooth Fermi-Ulam map:
///   y2 = (y1 + y1') mod 1,  y2' = y1' + y2 * sgn(y2 - 1/2);
/// angle plays y, action plays y'.
CylState step_sawtooth_fu(const MapParams& params, const CylState& s);

enum class StopReason { kCompleted, kSingularHalt, kDomainError };

/// Decimated record of a long orbit.
struct OrbitTrace {
    MapParams params;
    CylState initial;
    std::vector<CylState> states;           // initial plus every decimation-th state
    long long step_count = 0;               // steps actually applied
    std::vector<long long> singular_hits;   // 1-based step indices of exact landings
    double action_min = 0.0;
    double action_max = 0.0;
    StopReason stop = StopReason::kCompleted;
    std::string stop_detail;
};

/// Iterate the selected step map n_steps times, recording every decimation-th
/// state plus action extrema.  Under Halt policy an exact landing stops the
/// run with the partial trace; a domain violation likewise aborts with the
/// trace up to the failure.  Deterministic for fixed params and policy.
OrbitTrace iterate(const MapParams& params, const CylState& s0, long long n_steps,
                   long long decimation);

struct EscapeFractionResult {
    int grid = 0;
    int escaped = 0;
    double fraction = 0.0;
    double threshold = 0.0;
    long long step_budget = 0;
};

/// Fraction of a grid of initial angles at action0 whose action climbs
/// monotonically (gain at every step) past `threshold` within `step_budget`
/// steps.  Any loss, domain failure, or budget exhaustion disqualifies a seed.
EscapeFractionResult monotone_escape_fraction(const MapParams& params, double action0,
                                              int grid, double threshold,
                                              long long step_budget);

}  // namespace pinball
