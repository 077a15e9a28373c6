#include "pinball/escape.hpp"

#include <cmath>

namespace pinball {

double second_order_drift(long long N) {
    if (N < 3) throw DomainError("second_order_drift: N must be >= 3");
    const double x = static_cast<double>(N);
    return 1.0 / (8.0 * (x - 1.0)) - 1.0 / (4.0 * x - 2.0);
}

namespace {

MapParams seed_params(const EscapeSeed& seed, NumericPolicy policy) {
    MapParams p = MapParams::pinball_exact_mu(seed.mu, policy);
    return p;
}

// Rescaled image of the fiber point phi_tilde = c at level n0, in the output
// normalization.
double measured_return(const MapParams& p, double c, long long n0) {
    const double phi = p.alpha * c / (static_cast<double>(n0) - 1.0);
    return first_return(p, {phi, static_cast<double>(n0)}).phi_tilde_out;
}

}  // namespace

EscapeSeed make_seed(int m, long long n0) {
    if (m < 1) throw DomainError("make_seed: m must be >= 1");
    if (n0 < 100) throw DomainError("make_seed: N0 must be >= 100");

    EscapeSeed seed;
    seed.m = m;
    seed.mu = 2.0 * m;
    seed.alpha = 1.0 / std::log(seed.mu);
    seed.n0 = n0;

    if (m == 1) {
        const double N = static_cast<double>(n0);
        seed.phi_tilde0 = 0.125 + 1.0 / (8.0 * (N - 1.0) * (2.0 * N - 1.0));
        seed.closed_form = true;
    } else {
        // Fixed point of the measured renormalized return over the gain
        // interval: F(c) = phi_tilde_out(c) - c changes sign at the resonant
        // seed.  Solved by bisection on the analytic gain interval.
        const MapParams p = seed_params(seed, NumericPolicy::kCompensatedDouble);
        const FiberAnalytics fa = analytic_fiber_intervals(p, static_cast<double>(n0));
        const double R = fa.fiber_width;
        const double lo0 = fa.i_plus.lo / R, hi0 = fa.i_plus.hi / R;
        const double w = hi0 - lo0;
        auto F = [&](double c) { return measured_return(p, c, n0) - c; };

        // bracket the sign change on an inset scan of the gain interval
        const int scan = 65;
        double a = lo0 + 0.02 * w, b = hi0 - 0.02 * w;
        double prev_c = a, prev_f = F(a);
        bool bracketed = false;
        for (int i = 1; i < scan; ++i) {
            const double c = a + (b - a) * i / (scan - 1);
            const double f = F(c);
            if ((prev_f <= 0.0 && f >= 0.0) || (prev_f >= 0.0 && f <= 0.0)) {
                a = prev_c;
                b = c;
                bracketed = true;
                break;
            }
            prev_c = c;
            prev_f = f;
        }
        double c = 0.5 * (a + b);
        if (bracketed) {
            double fa_ = F(a);
            for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
                c = 0.5 * (a + b);
                const double fc = F(c);
                if ((fa_ <= 0.0) == (fc <= 0.0)) {
                    a = c;
                    fa_ = fc;
                } else {
                    b = c;
                }
            }
            c = 0.5 * (a + b);
        }
        seed.phi_tilde0 = c;
        seed.closed_form = false;
    }
    seed.phi0 = seed.alpha * seed.phi_tilde0 / (static_cast<double>(n0) - 1.0);
    return seed;
}

GrowthReport run_escape(const EscapeSeed& seed, long long returns, NumericPolicy policy,
                        long long track_decimation) {
    if (returns < 0) throw DomainError("run_escape: returns must be >= 0");
    if (track_decimation < 1) track_decimation = 1;

    GrowthReport rep;
    rep.seed = seed;
    rep.returns_requested = returns;
    rep.policy = policy;
    rep.final_action = static_cast<double>(seed.n0);

    const MapParams p = seed_params(seed, policy);
    double phi = seed.phi0;
    double action = static_cast<double>(seed.n0);
    bool monotone = true;
    double rounding_estimate = 0.0;

    rep.phi_tilde_track.push_back({0, static_cast<double>(seed.n0), seed.phi_tilde0});
    for (long long r = 1; r <= returns; ++r) {
        ReturnEvent ev;
        try {
            ev = first_return(p, {phi, action});
        } catch (const MapError& e) {
            rep.stop_detail = e.what();
            break;
        }
        const double di = ev.action_out - ev.action_in;
        if (di > 0.5)
            ++rep.gains;
        else if (di < -0.5)
            ++rep.losses;
        else
            ++rep.zeros;
        if (monotone && di > 0.5)
            rep.longest_monotone_prefix = r;
        else
            monotone = false;

        if (rep.certificate_checked < 100) {
            ++rep.certificate_checked;
            const double crossing = ev.phi_in + 2.0 * p.alpha * ev.s1 +
                                    p.alpha / (ev.action_in + static_cast<double>(ev.n) + 1.0);
            if (!(crossing > 2.0)) ++rep.certificate_failures;
        }

        // crude per-return rounding model: half-ulp near position 2 per step
        // for plain double, increment quantization under compensation,
        // nothing measurable for double-double
        const double steps = static_cast<double>(ev.total_steps + 2);
        switch (policy) {
            case NumericPolicy::kDouble:
                rounding_estimate += steps * 2.3e-16;
                break;
            case NumericPolicy::kCompensatedDouble:
                rounding_estimate += steps * 1.2e-16 * (p.alpha / ev.action_in);
                break;
            case NumericPolicy::kDoubleDouble:
                rounding_estimate += steps * 1.0e-31;
                break;
        }

        phi = ev.phi_out;
        action = ev.action_out;
        rep.returns_completed = r;
        rep.final_action = action;
        if (r % track_decimation == 0 || r == returns)
            rep.phi_tilde_track.push_back({r, ev.action_out, ev.phi_tilde_out});
    }

    const double fiber = p.alpha / (rep.final_action - 1.0);
    rep.precision_warning = rounding_estimate > 1e-3 * fiber;
    return rep;
}

EscalationReport run_escape_escalating(const EscapeSeed& seed, long long returns,
                                       long long track_decimation) {
    EscalationReport out;
    const NumericPolicy ladder[] = {NumericPolicy::kDouble, NumericPolicy::kCompensatedDouble,
                                    NumericPolicy::kDoubleDouble};
    for (NumericPolicy policy : ladder) {
        GrowthReport rep = run_escape(seed, returns, policy, track_decimation);
        out.ladder.push_back({policy, rep.longest_monotone_prefix});
        out.report = std::move(rep);
        out.stabilized_at = policy;
        if (out.report.longest_monotone_prefix >= returns) {
            out.stabilized = true;
            break;
        }
    }
    return out;
}

}  // namespace pinball
