#include "pinball/renorm.hpp"

#include <cmath>

namespace pinball {

namespace {

double mod1(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

double circle_dist(double a, double b) {
    const double d = std::abs(mod1(a) - mod1(b));
    return std::min(d, 1.0 - d);
}

}  // namespace

double mu_of_alpha(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("mu_of_alpha: alpha must be > 0");
    return std::exp(1.0 / alpha);
}

RenormContext RenormContext::from_mu(double mu) {
    if (!(mu > 1.0)) throw DomainError("RenormContext: mu must exceed 1");
    RenormContext ctx;
    ctx.mu = mu;
    ctx.alpha = 1.0 / std::log(mu);
    ctx.regime = mu < 3.0 ? MuRegime::kLow : MuRegime::kHigh;
    ctx.strip0 = {0.0, 1.0 / mu};
    ctx.strip1 = {1.0 - 1.0 / mu, 1.0};
    return ctx;
}

RenormContext RenormContext::from_alpha(double alpha) {
    RenormContext ctx = from_mu(mu_of_alpha(alpha));
    ctx.alpha = alpha;
    return ctx;
}

RenormContext RenormContext::from_params(const MapParams& params) {
    if (params.exact_mu) {
        RenormContext ctx = from_mu(*params.exact_mu);
        ctx.alpha = params.alpha;
        return ctx;
    }
    return from_alpha(params.alpha);
}

double h_mu_chi(double mu, double x) {
    const double f = mod1(mu * x);
    return (mu + 2.0 * f - 3.0) >= 0.0 ? 1.0 : 0.0;
}

double h_mu(double mu, double x) {
    if (!(mu > 1.0)) throw DomainError("h_mu: mu must exceed 1");
    const double f = mod1(mu * x);
    const double chi = (mu + 2.0 * f - 3.0) >= 0.0 ? 1.0 : 0.0;
    return chi - f;
}

long long predicted_n(const RenormContext& ctx, long long N) {
    if (N < 2) throw DomainError("predicted_n: N must be >= 2");
    const double x = static_cast<double>(N - 1);
    const double f = mod1(ctx.mu * x);
    // integer part of the crossing condition 1 < mu + 2{mu x} - 2g < 3; in the
    // low regime this is the indicator chi_{>=0}(mu + 2{mu x} - 3) of H_mu
    const double g = std::floor((ctx.mu + 2.0 * f - 1.0) / 2.0);
    const double v = ctx.mu * x - static_cast<double>(N) + (g - f);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-6)
        throw NonIntegerPrediction("predicted_n: value not within 1e-6 of an integer", v);
    return static_cast<long long>(r);
}

CasePrediction predicted_return_case(const RenormContext& ctx, long long N,
                                     double phi_tilde, CaseId case_id) {
    if (ctx.regime == MuRegime::kHigh)
        throw DomainError("predicted_return_case: case formulas require mu in (1,3)");
    const double h1 = h_mu(ctx.mu, static_cast<double>(N - 1));
    const double h2 = h_mu(ctx.mu, static_cast<double>(N - 2));
    const double two_over_mu = 2.0 / ctx.mu;
    double inc = 0.0;
    switch (case_id) {
        case CaseId::kPlus:       inc = two_over_mu * (1.0 + h1) - 1.0; break;
        case CaseId::kMinus:      inc = two_over_mu * (1.0 + h2) - 1.0; break;
        // The neutral branches form an interval exchange indexed by how far
        // the up-phase count sits below the gain interval's: with
        // j = n_plus - 1 - n the rotation is (2/mu)(H_mu(N-1) - j).
        case CaseId::kZeroLeft:   inc = two_over_mu * (h1 + 1.0); break;
        case CaseId::kZeroMiddle: inc = two_over_mu * h1; break;
        case CaseId::kZeroRight:  inc = two_over_mu * (h1 - 1.0); break;
    }
    return {case_id, inc, mod1(phi_tilde + inc)};
}

double g_mu(const RenormContext& ctx, long long N, double phi_tilde, bool chi_plus,
            bool chi_minus) {
    const bool in0 = phi_tilde >= ctx.strip0.lo && phi_tilde <= ctx.strip0.hi;
    const bool in1 = phi_tilde >= ctx.strip1.lo && phi_tilde <= ctx.strip1.hi;
    const double arg = static_cast<double>(N - 1) - (in1 ? 1.0 : 0.0);
    return h_mu(ctx.mu, arg) + 0.5 * (1.0 + (chi_plus ? 1.0 : 0.0) + (chi_minus ? 1.0 : 0.0)) -
           ((in0 ? 1.0 : 0.0) + (in1 ? 1.0 : 0.0));
}

double g_mu_form(const RenormContext& ctx, long long N, double phi_tilde, bool chi_plus,
                 bool chi_minus) {
    return mod1(phi_tilde + (2.0 / ctx.mu) * g_mu(ctx, N, phi_tilde, chi_plus, chi_minus));
}

double s1_asymptotic(long long N, long long n) {
    if (N < 2 || n < 0) throw DomainError("s1_asymptotic: requires N >= 2, n >= 0");
    const double a = static_cast<double>(N + n);
    const double b = static_cast<double>(N - 1);
    return std::log(a / b) + 0.5 * (1.0 / a - 1.0 / b) -
           (1.0 / 12.0) * (1.0 / (a * a) - 1.0 / (b * b));
}

RenormScan renorm_error_scan(const MapParams& params, const std::vector<long long>& actions,
                             long long grid) {
    const RenormContext ctx = RenormContext::from_params(params);
    if (ctx.regime == MuRegime::kHigh)
        throw DomainError("renorm_error_scan: requires mu in (1,3)");
    if (grid < 1) throw DomainError("renorm_error_scan: grid must be >= 1");

    RenormScan scan;
    for (long long N : actions) {
        const double action = static_cast<double>(N);
        const FiberAnalytics fa = analytic_fiber_intervals(params, action);
        const double R = fa.fiber_width;

        RenormScanRow row;
        row.action = action;
        for (long long j = 0; j < grid; ++j) {
            const double phi_tilde = (j + 0.5) / static_cast<double>(grid);
            const double phi = phi_tilde * R;
            ReturnEvent ev;
            try {
                ev = first_return(params, {phi, action});
            } catch (const MapError&) {
                ++row.skipped_points;
                continue;
            }
            CaseId id;
            if (ev.classification == ReturnClass::kPlus) {
                id = CaseId::kPlus;
            } else if (ev.classification == ReturnClass::kMinus) {
                id = CaseId::kMinus;
            } else {
                // neutral branch index from the measured up-phase count
                const long long shift = fa.n_plus - 1 - ev.n;
                id = shift <= -1 ? CaseId::kZeroLeft
                   : shift == 0  ? CaseId::kZeroMiddle
                                 : CaseId::kZeroRight;
            }
            const CasePrediction pred = predicted_return_case(ctx, N, phi_tilde, id);
            const double err = circle_dist(ev.phi_tilde_out, pred.phi_tilde_next);
            const auto k = static_cast<size_t>(id);
            ++row.points_by_case[k];
            if (err > row.max_error_by_case[k]) row.max_error_by_case[k] = err;
            if (err > row.max_abs_error) row.max_abs_error = err;
        }
        scan.rows.push_back(row);
    }

    // least-squares slope of ln(max_err) on ln(action)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long long m = 0;
    for (const auto& row : scan.rows) {
        if (row.max_abs_error <= 0.0) continue;
        const double x = std::log(row.action);
        const double y = std::log(row.max_abs_error);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m >= 2) {
        const double denom = m * sxx - sx * sx;
        scan.slope = (m * sxy - sx * sy) / denom;
        scan.intercept = (sy - scan.slope * sx) / m;
    }
    return scan;
}

}  // namespace pinball
