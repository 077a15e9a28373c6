#pragma once

#include <utility>
#include <vector>

#include "pinball/return_map.hpp"
#include "pinball/types.hpp"

namespace pinball {

/// Initial condition for a resonant uphill orbit at alpha = 1/ln(2m).
struct EscapeSeed {
    int m = 1;
    double alpha = 0.0;
    double mu = 0.0;  // exactly 2m
    long long n0 = 0;
    double phi_tilde0 = 0.0;
    double phi0 = 0.0;         // alpha * phi_tilde0 / (n0 - 1)
    bool closed_form = true;   // false when found by the numerical fixed-point solve
};

/// Per-return drift of the rescaled angle at mu = 2, in the input-action
/// rescaling: 1/(8(N-1)) - 1/(4N-2).
double second_order_drift(long long N);

/// Seed near phi_tilde = 1/8 for m = 1 (closed form
/// 1/8 + 1/(8(N0-1)(2N0-1))); for m > 1 the analogous renormalized fixed
/// point is solved numerically against measured returns.
EscapeSeed make_seed(int m, long long n0);

struct TrackPoint {
    long long return_index = 0;
    double action = 0.0;
    double phi_tilde = 0.0;
};

struct GrowthReport {
    EscapeSeed seed;
    long long returns_requested = 0;
    long long returns_completed = 0;
    long long gains = 0;   // returns with delta_I = +1
    long long zeros = 0;
    long long losses = 0;
    long long longest_monotone_prefix = 0;
    double final_action = 0.0;
    std::vector<TrackPoint> phi_tilde_track;  // decimated
    NumericPolicy policy = NumericPolicy::kDoubleDouble;
    long long certificate_checked = 0;   // crossing certificate, first 100 returns
    long long certificate_failures = 0;
    bool precision_warning = false;      // est. angle rounding > 1e-3 * fiber width
    std::string stop_detail;             // set when the run ended early
};

/// Iterate the first-return map from the seed, recording the action increments
/// and the rescaled-angle track.  The certificate checks that the reconstructed
/// crossing value phi + 2 alpha S1 + alpha/(N+n+1) exceeds 2 on early returns.
GrowthReport run_escape(const EscapeSeed& seed, long long returns, NumericPolicy policy,
                        long long track_decimation = 1);

struct EscalationStep {
    NumericPolicy policy;
    long long prefix;
};

struct EscalationReport {
    GrowthReport report;                // at the policy that stabilized (or the last tried)
    std::vector<EscalationStep> ladder;
    NumericPolicy stabilized_at = NumericPolicy::kDoubleDouble;
    bool stabilized = false;
};

/// Re-run with Double, CompensatedDouble, DoubleDouble until the monotone
/// prefix covers the requested horizon; reports where it stabilized, which
/// separates arithmetic failure from dynamical failure.
EscalationReport run_escape_escalating(const EscapeSeed& seed, long long returns,
                                       long long track_decimation = 1);

}  // namespace pinball
