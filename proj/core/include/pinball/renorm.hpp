#pragma once

#include <array>
#include <vector>

#include "pinball/return_map.hpp"
#include "pinball/types.hpp"

namespace pinball {

enum class MuRegime { kLow, kHigh };  // kLow: mu in (1,3), the proven regime

/// Renormalization data for one alpha: the multiplier mu = exp(1/alpha) and
/// the 1/mu indicator strips at the fiber boundaries.
struct RenormContext {
    double alpha = 0.0;
    double mu = 0.0;
    MuRegime regime = MuRegime::kLow;
    Interval strip0;  // [0, 1/mu]
    Interval strip1;  // [1 - 1/mu, 1]

    static RenormContext from_alpha(double alpha);
    /// Carry an exactly known mu (alpha = 1/ln mu) so fractional parts of
    /// mu*(N-1) are computed without transcendental rounding.
    static RenormContext from_mu(double mu);
    static RenormContext from_params(const MapParams& params);
};

/// exp(1/alpha); DomainError for alpha <= 0.
double mu_of_alpha(double alpha);

/// Indicator component of the correction function: chi_{>=0}(mu + 2{mu x} - 3),
/// the gamma of the step-count formula.
double h_mu_chi(double mu, double x);

/// Correction function H_mu(x) = chi_{>=0}(mu + 2{mu x} - 3) - {mu x}, in (-1, 1].
double h_mu(double mu, double x);

/// Predicted up-phase step count n = mu(N-1) - N + H_mu(N-1), with the
/// indicator of H generalized to floor((mu + 2{mu(N-1)} - 1)/2) so the same
/// expression covers the high regime.  Throws NonIntegerPrediction when the
/// value is farther than 1e-6 from an integer (caller falls back to the
/// iteration oracle).
long long predicted_n(const RenormContext& ctx, long long N);

enum class CaseId { kPlus = 0, kMinus = 1, kZeroMiddle = 2, kZeroLeft = 3, kZeroRight = 4 };

struct CasePrediction {
    CaseId case_id = CaseId::kPlus;
    double increment = 0.0;       // rotation added before reduction mod 1
    double phi_tilde_next = 0.0;  // in [0, 1)
};

/// Leading-order renormalized return, by branch (all mod 1):
///   Plus:       phi' = phi + (2/mu)(1 + H_mu(N-1)) - 1
///   Minus:      phi' = phi + (2/mu)(1 + H_mu(N-2)) - 1
///   ZeroLeft:   phi' = phi + (2/mu)(H_mu(N-1) + 1)
///   ZeroMiddle: phi' = phi + (2/mu) H_mu(N-1)
///   ZeroRight:  phi' = phi + (2/mu)(H_mu(N-1) - 1)
/// The three neutral branches are one family (2/mu)(H_mu(N-1) - j) indexed by
/// the up-phase shortfall j = n_plus - 1 - n in {-1, 0, 1}.  DomainError in
/// the high regime.
CasePrediction predicted_return_case(const RenormContext& ctx, long long N,
                                     double phi_tilde, CaseId case_id);

/// The compact correction term g_mu(I, phi) of the one-line renormalized map.
double g_mu(const RenormContext& ctx, long long N, double phi_tilde, bool chi_plus,
            bool chi_minus);

/// The compact-form map phi + (2/mu) g_mu mod 1.  Kept for cross-comparison
/// against the case formulas; disagreements are a reported finding.
double g_mu_form(const RenormContext& ctx, long long N, double phi_tilde, bool chi_plus,
                 bool chi_minus);

/// Three-term asymptotic value of S1 = sum_{k=0}^{n} 1/(N+k):
///   ln((N+n)/(N-1)) + (1/2)(1/(N+n) - 1/(N-1)) - (1/12)(1/(N+n)^2 - 1/(N-1)^2).
double s1_asymptotic(long long N, long long n);

struct RenormScanRow {
    double action = 0.0;
    double max_abs_error = 0.0;                     // circle distance, max over the fiber
    std::array<double, 5> max_error_by_case{};      // indexed by CaseId
    std::array<long long, 5> points_by_case{};
    long long skipped_points = 0;                   // singular or budget failures
};

struct RenormScan {
    std::vector<RenormScanRow> rows;
    double slope = 0.0;      // log-log fit of max error vs action
    double intercept = 0.0;
};

/// For each action level, compare the true rescaled return against the case
/// prediction selected by the true classification, over `grid` fiber points;
/// fit the decay of the max error in the action.
RenormScan renorm_error_scan(const MapParams& params, const std::vector<long long>& actions,
                             long long grid);

}  // namespace pinball
