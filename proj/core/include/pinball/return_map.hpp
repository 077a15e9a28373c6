#pragma once

#include <vector>

#include "pinball/maps.hpp"
#include "pinball/types.hpp"

namespace pinball {

enum class ReturnClass { kMinus = -1, kZero = 0, kPlus = 1 };

/**
 * One excursion from the fundamental domain back to it.
 *
 * Counting convention: up_steps are the landings in (0,1) before the first
 * crossing of angle 1; down_steps are the landings in (1,2) after it.  The
 * crossing step and the final wrap into the fundamental domain belong to
 * neither count, so n = up_steps-1, n' = down_steps-1, delta_I = n - n',
 * and the full excursion takes total_steps + 2 map iterations.
 */
struct ReturnEvent {
    double phi_in = 0.0;
    double action_in = 0.0;
    double phi_tilde_in = 0.0;
    long long up_steps = 0;
    long long down_steps = 0;
    long long n = 0;
    long long n_prime = 0;
    double s1 = 0.0;       // sum over up-phase of 1/(I+k), unweighted by alpha
    double s2 = 0.0;       // sum over down-phase
    double delta_s = 0.0;  // s2 - s1 + 1/(I_out - 1); branches 0, 1/(I-1), 1/(I-1)+1/(I-2)
    double delta1 = 0.0;   // gap below 1 after the up phase
    double delta2 = 0.0;   // overshoot above 1 by the crossing step
    double phi_out = 0.0;
    double action_out = 0.0;
    double phi_tilde_out = 0.0;
    ReturnClass classification = ReturnClass::kZero;
    long long total_steps = 0;  // up_steps + down_steps
};

/// Smallest action the return-map analysis accepts: max(3, ceil(2 alpha) + 2),
/// which keeps the fiber width below 1 and excursions single-wrap.
double min_return_action(const MapParams& params);

/// True iff 0 < angle < alpha/(action - 1).
bool in_fundamental_domain(const MapParams& params, const CylState& s);

/// Rescaled fiber coordinate phi_tilde = (action - 1) * angle / alpha in [0, 1].
double rescale(const MapParams& params, const CylState& s);

/// Iterate the pinball map until the orbit re-enters the fundamental domain.
/// Budget: 4 mu action + 64 steps, beyond which BudgetExceeded is thrown.
ReturnEvent first_return(const MapParams& params, const CylState& s);

/// Exact fiber quantities derived from the harmonic sums: the delta^(0) pair
/// anchored at the left edge (sums from level I) and the delta^(00) pair
/// anchored at the right edge (sums from level I-1), plus the interval
/// decomposition they induce.
struct FiberAnalytics {
    double action = 0.0;
    double fiber_width = 0.0;      // alpha/(I-1)
    long long n_plus = 0;          // up-phase count shared by the gain interval
    double delta1_0 = 0.0;
    double delta2_0 = 0.0;
    double delta1_00 = 0.0;
    double delta2_00 = 0.0;
    Interval i_plus;
    Interval i_minus;
    std::vector<Interval> i_zero_components;
};

FiberAnalytics analytic_fiber_intervals(const MapParams& params, double action);

/// Analytic and brute-force decomposition of one fiber.
struct IntervalReport {
    double action = 0.0;
    double alpha = 0.0;
    double mu = 0.0;
    Interval i_plus;                          // analytic
    Interval i_minus;                         // analytic
    std::vector<Interval> i_zero_components;  // analytic complement
    double delta1_0 = 0.0, delta2_0 = 0.0;
    double delta1_00 = 0.0, delta2_00 = 0.0;
    long long bruteforce_grid = 0;
    double cell_width = 0.0;
    Interval bf_i_plus;
    Interval bf_i_minus;
    long long bf_plus_cells = 0;
    long long bf_minus_cells = 0;
    long long bf_plus_gap_cells = 0;   // cells missing inside the bf_i_plus hull
    long long bf_minus_gap_cells = 0;
    long long unclassified_cells = 0;  // singular or budget failures in the scan
    bool analytic_mismatch = false;    // any endpoint off by more than 2 cells
};

/// Scan `grid` equispaced fiber points through first_return and compare the
/// measured gain/loss intervals with the analytic endpoints.
IntervalReport classify_fiber(const MapParams& params, double action, long long grid);

/// All sampled points of the gain interval share one up-phase step count.
bool rigidity_check(const MapParams& params, double action, int samples);

}  // namespace pinball
