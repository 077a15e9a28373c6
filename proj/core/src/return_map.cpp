#include "pinball/return_map.hpp"

#include <algorithm>
#include <cmath>

#include "pinball/detail/angle.hpp"

namespace pinball {

namespace {

void require_pinball_proofs(const MapParams& p, const char* op) {
    p.validate();
    if (p.z != -1.0 || p.circle_len != 2.0)
        throw DomainError(std::string(op) + ": pinball parameters required (z = -1, circle_len = 2)");
    if (p.sign_variant != SignVariant::kPinballProofs)
        throw DomainError(std::string(op) + ": return-map analysis assumes gain on (0,1)");
}

// First-return excursion on the covering line.  Positions climb monotonically
// from phi in (0,1) through the crossing of 1 to the wrap past 2.
template <class Angle>
ReturnEvent excursion(const MapParams& p, double phi, double action0) {
    ReturnEvent ev;
    ev.phi_in = phi;
    ev.action_in = action0;
    ev.phi_tilde_in = (action0 - 1.0) * phi / p.alpha;

    Angle pos(phi);
    double act = action0;
    NeumaierSum s1, s2;
    bool crossed = false;
    double prev_value = phi;
    const long long budget =
        static_cast<long long>(4.0 * p.mu() * action0 + 64.0);

    for (long long step = 1;; ++step) {
        if (step > budget)
            throw BudgetExceeded("first_return: iteration budget exceeded");
        const double divisor = act;
        pos.add_quotient(p.alpha, divisor);
        const double v = pos.value();

        // Exact landings on the discontinuity lines resolve to a side by policy.
        const bool exact1 = pos.equals(1.0);
        const bool exact2 = pos.equals(2.0);
        bool exact_as_plus = false;
        if (exact1 || exact2) {
            if (p.singular_policy == SingularPolicy::kHalt)
                throw SingularHit("first_return: exact discontinuity landing");
            exact_as_plus = p.singular_policy == SingularPolicy::kTreatAsPlus;
        }

        const bool wraps = exact2 ? exact_as_plus : v >= 2.0;
        if (wraps) {
            // wrap into the fundamental domain; this landing gains
            pos.sub_exact(2.0);
            ev.phi_out = pos.value();
            ev.action_out = act + 1.0;
            break;
        }
        if (!crossed) {
            const bool above1 = exact1 ? !exact_as_plus : v > 1.0;
            if (above1) {
                // crossing step: loses, counted in neither phase
                ev.delta1 = 1.0 - prev_value;
                ev.delta2 = v - 1.0;
                act -= 1.0;
                crossed = true;
            } else {
                s1.add(1.0 / divisor);
                act += 1.0;
                ++ev.up_steps;
            }
        } else {
            s2.add(1.0 / divisor);
            act -= 1.0;
            ++ev.down_steps;
            if (!(act > 0.0))
                throw DomainError("first_return: action reached 0 during excursion");
        }
        prev_value = v;
    }

    ev.n = ev.up_steps - 1;
    ev.n_prime = ev.down_steps - 1;
    ev.s1 = s1.value();
    ev.s2 = s2.value();
    ev.total_steps = ev.up_steps + ev.down_steps;
    ev.delta_s = (ev.s2 - ev.s1) + 1.0 / (ev.action_out - 1.0);
    const double di = ev.action_out - ev.action_in;
    ev.classification = di > 0.5 ? ReturnClass::kPlus
                      : di < -0.5 ? ReturnClass::kMinus
                                  : ReturnClass::kZero;
    ev.phi_tilde_out = (ev.action_out - 1.0) * ev.phi_out / p.alpha;
    return ev;
}

}  // namespace

double min_return_action(const MapParams& params) {
    return std::max(3.0, std::ceil(2.0 * params.alpha) + 2.0);
}

bool in_fundamental_domain(const MapParams& params, const CylState& s) {
    params.validate();
    if (!(s.action > 1.0))
        throw DomainError("in_fundamental_domain: requires action > 1");
    return s.angle > 0.0 && s.angle < params.alpha / (s.action - 1.0);
}

double rescale(const MapParams& params, const CylState& s) {
    if (!in_fundamental_domain(params, s))
        throw DomainError("rescale: point outside the fundamental domain");
    return (s.action - 1.0) * s.angle / params.alpha;
}

ReturnEvent first_return(const MapParams& params, const CylState& s) {
    require_pinball_proofs(params, "first_return");
    if (s.action < min_return_action(params))
        throw DomainError("first_return: action below the analysis threshold");
    if (!in_fundamental_domain(params, s))
        throw DomainError("first_return: seed outside the fundamental domain");
    switch (params.numeric_policy) {
        case NumericPolicy::kDouble:
            return excursion<detail::DoubleAngle>(params, s.angle, s.action);
        case NumericPolicy::kCompensatedDouble:
            return excursion<detail::CompensatedAngle>(params, s.angle, s.action);
        case NumericPolicy::kDoubleDouble:
            return excursion<detail::DDAngle>(params, s.angle, s.action);
    }
    throw DomainError("first_return: unknown numeric policy");
}

namespace {

// delta pair of the forward excursion from angle 0+ with harmonic sums
// starting at `level`: largest n with alpha*sum_{j=0}^{n} 1/(level+j) < 1,
// then delta2 = alpha*sum_{j=0}^{n+1} - 1 and delta1 = alpha/(level+n+1) - delta2.
struct DeltaPair {
    long long n;
    double delta1, delta2;
};

DeltaPair edge_deltas(double alpha, double level) {
    NeumaierSum s;
    long long n = -1;
    for (long long k = 0;; ++k) {
        s.add(1.0 / (level + static_cast<double>(k)));
        if (alpha * s.value() >= 1.0) {
            const double d2 = alpha * s.value() - 1.0;
            const double d1 = alpha / (level + static_cast<double>(k)) - d2;
            return {n, d1, d2};
        }
        n = k;
        if (k > static_cast<long long>(8.0 * std::exp(1.0 / alpha) * level + 1e6))
            throw BudgetExceeded("edge_deltas: harmonic sum failed to reach 1");
    }
}

}  // namespace

FiberAnalytics analytic_fiber_intervals(const MapParams& params, double action) {
    require_pinball_proofs(params, "analytic_fiber_intervals");
    if (action < min_return_action(params))
        throw DomainError("analytic_fiber_intervals: action below the analysis threshold");

    FiberAnalytics fa;
    fa.action = action;
    const double R = params.alpha / (action - 1.0);
    fa.fiber_width = R;

    const DeltaPair fwd = edge_deltas(params.alpha, action);
    fa.n_plus = fwd.n;
    fa.delta1_0 = fwd.delta1;
    fa.delta2_0 = fwd.delta2;
    if (fa.delta2_0 > fa.delta1_0)
        fa.i_plus = {0.0, fa.delta1_0};  // left edge itself gains
    else
        fa.i_plus = {fa.delta1_0 - fa.delta2_0, fa.delta1_0};

    // Right-edge pair: the preimage of the right edge is (0-, I-1), so the
    // time-reversed construction runs the same sums one level down.
    const DeltaPair bwd = edge_deltas(params.alpha, action - 1.0);
    fa.delta1_00 = bwd.delta1;
    fa.delta2_00 = bwd.delta2;
    if (fa.delta1_00 > fa.delta2_00)
        fa.i_minus = {R - fa.delta2_00, R};
    else  // printed endpoints come out reversed; normalized so lo < hi
        fa.i_minus = {R - fa.delta2_00, R - fa.delta2_00 + fa.delta1_00};

    auto push_if_nonempty = [&](double lo, double hi) {
        if (hi > lo) fa.i_zero_components.push_back({lo, hi});
    };
    push_if_nonempty(0.0, fa.i_plus.lo);
    push_if_nonempty(fa.i_plus.hi, fa.i_minus.lo);
    push_if_nonempty(fa.i_minus.hi, R);
    return fa;
}

IntervalReport classify_fiber(const MapParams& params, double action, long long grid) {
    require_pinball_proofs(params, "classify_fiber");
    if (grid < 1000) throw DomainError("classify_fiber: grid must be >= 1000");

    IntervalReport rep;
    rep.action = action;
    rep.alpha = params.alpha;
    rep.mu = params.mu();
    rep.bruteforce_grid = grid;

    const FiberAnalytics fa = analytic_fiber_intervals(params, action);
    rep.i_plus = fa.i_plus;
    rep.i_minus = fa.i_minus;
    rep.i_zero_components = fa.i_zero_components;
    rep.delta1_0 = fa.delta1_0;
    rep.delta2_0 = fa.delta2_0;
    rep.delta1_00 = fa.delta1_00;
    rep.delta2_00 = fa.delta2_00;

    const double R = fa.fiber_width;
    rep.cell_width = R / grid;

    long long first_p = -1, last_p = -1, first_m = -1, last_m = -1;
    for (long long j = 0; j < grid; ++j) {
        const double phi = R * (j + 0.5) / grid;
        ReturnClass c;
        try {
            c = first_return(params, {phi, action}).classification;
        } catch (const MapError&) {
            ++rep.unclassified_cells;
            continue;
        }
        if (c == ReturnClass::kPlus) {
            ++rep.bf_plus_cells;
            if (first_p < 0) first_p = j;
            last_p = j;
        } else if (c == ReturnClass::kMinus) {
            ++rep.bf_minus_cells;
            if (first_m < 0) first_m = j;
            last_m = j;
        }
    }
    if (first_p >= 0) {
        rep.bf_i_plus = {R * first_p / grid, R * (last_p + 1) / grid};
        rep.bf_plus_gap_cells = (last_p - first_p + 1) - rep.bf_plus_cells;
    }
    if (first_m >= 0) {
        rep.bf_i_minus = {R * first_m / grid, R * (last_m + 1) / grid};
        rep.bf_minus_gap_cells = (last_m - first_m + 1) - rep.bf_minus_cells;
    }

    const double tol = 2.0 * rep.cell_width;
    rep.analytic_mismatch =
        std::abs(rep.i_plus.lo - rep.bf_i_plus.lo) > tol ||
        std::abs(rep.i_plus.hi - rep.bf_i_plus.hi) > tol ||
        std::abs(rep.i_minus.lo - rep.bf_i_minus.lo) > tol ||
        std::abs(rep.i_minus.hi - rep.bf_i_minus.hi) > tol;
    return rep;
}

bool rigidity_check(const MapParams& params, double action, int samples) {
    require_pinball_proofs(params, "rigidity_check");
    if (samples <= 0) return true;  // vacuously
    const FiberAnalytics fa = analytic_fiber_intervals(params, action);
    const Interval ip = fa.i_plus;
    if (ip.empty()) return true;
    const double inset = ip.width() / (4.0 * samples + 4.0);
    long long common = -1;
    for (int i = 0; i < samples; ++i) {
        const double phi =
            ip.lo + inset + (ip.width() - 2.0 * inset) * i / std::max(1, samples - 1);
        const ReturnEvent ev = first_return(params, {phi, action});
        if (ev.classification != ReturnClass::kPlus) continue;  // edge fuzz
        if (common < 0)
            common = ev.up_steps;
        else if (ev.up_steps != common)
            return false;
    }
    return true;
}

}  // namespace pinball
