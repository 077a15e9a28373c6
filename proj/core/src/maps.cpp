#include "pinball/maps.hpp"

#include <cmath>

#include "pinball/detail/angle.hpp"

namespace pinball {

namespace {

// +1 if the landing gains action under the params' orientation, -1 otherwise.
// Callers resolve exact boundary landings before asking.
int gain_side(const MapParams& p, double angle) {
    const bool lower_half = angle < 0.5 * p.circle_len;
    const bool proofs = p.sign_variant == SignVariant::kPinballProofs;
    return (lower_half == proofs) ? +1 : -1;
}

int policy_side(const MapParams& p, const char* where) {
    switch (p.singular_policy) {
        case SingularPolicy::kHalt:
            throw SingularHit(std::string("exact discontinuity landing in ") + where);
        case SingularPolicy::kTreatAsPlus:
            return +1;
        case SingularPolicy::kTreatAsMinus:
            return -1;
    }
    return +1;
}

bool on_singular_line(const MapParams& p, double angle) {
    return angle == 0.0 || angle == 0.5 * p.circle_len;
}

void check_action_domain(const MapParams& p, double action) {
    if (p.z_is_integer()) {
        if (p.z < 0.0 && action == 0.0)
            throw DomainError("action = 0 with negative exponent");
    } else {
        if (!(action > 0.0))
            throw DomainError("action^z undefined: action <= 0 with fractional z");
    }
}

}  // namespace

double action_power(double action, double z) {
    const bool integer_z = (z == std::nearbyint(z)) && std::abs(z) < 1e9;
    if (integer_z) {
        long long e = static_cast<long long>(z);
        if (e == 0) return 1.0;
        if (e < 0 && action == 0.0)
            throw DomainError("action = 0 with negative exponent");
        const bool neg = e < 0;
        if (neg) e = -e;
        double base = action, r = 1.0;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return neg ? 1.0 / r : r;
    }
    if (!(action > 0.0))
        throw DomainError("action^z undefined: action <= 0 with fractional z");
    return std::exp(z * std::log(action));
}

CylState step_az(const MapParams& params, const CylState& s) {
    params.validate();
    check_action_domain(params, s.action);
    const double inc = params.alpha * action_power(s.action, params.z);
    const double angle1 = reduce_angle(s.angle + inc, params.circle_len);
    int side;
    if (on_singular_line(params, angle1))
        side = policy_side(params, "step_az");
    else
        side = gain_side(params, angle1);
    return {angle1, s.action + side};
}

CylState step_pinball(const MapParams& params, const CylState& s) {
    params.validate();
    if (params.z != -1.0 || params.circle_len != 2.0)
        throw DomainError("step_pinball requires z = -1 on the circle of length 2");
    if (!(s.action > 0.0)) throw DomainError("pinball requires action > 0");
    const double angle1 = reduce_angle(s.angle + params.alpha / s.action, 2.0);
    int side;
    if (angle1 == 0.0 || angle1 == 1.0)
        side = policy_side(params, "step_pinball");
    else
        side = gain_side(params, angle1);
    const double action1 = s.action + side;
    if (!(action1 > 0.0)) throw DomainError("pinball action reached 0");
    return {angle1, action1};
}

CylState step_pinball_inverse(const MapParams& params, const CylState& s) {
    params.validate();
    if (params.z != -1.0 || params.circle_len != 2.0)
        throw DomainError("step_pinball_inverse requires z = -1 on the circle of length 2");
    if (!(s.action > 0.0)) throw DomainError("pinball requires action > 0");
    int side;
    if (s.angle == 0.0 || s.angle == 1.0)
        side = policy_side(params, "step_pinball_inverse");
    else
        side = gain_side(params, s.angle);
    const double action_prev = s.action - side;
    if (!(action_prev > 0.0))
        throw DomainError("pinball inverse: previous action <= 0");
    const double angle_prev = reduce_angle(s.angle - params.alpha / action_prev, 2.0);
    return {angle_prev, action_prev};
}

CylState step_sawtooth_fu(const MapParams& params, const CylState& s) {
    if (params.circle_len != 1.0)
        throw DomainError("step_sawtooth_fu requires circle_len = 1");
    const double y2 = reduce_angle(s.angle + s.action, 1.0);
    double sign;
    if (y2 == 0.5)
        sign = policy_side(params, "step_sawtooth_fu");
    else
        sign = (y2 > 0.5) ? 1.0 : -1.0;
    return {y2, s.action + y2 * sign};
}

namespace {

template <class Angle>
OrbitTrace iterate_impl(const MapParams& p, const CylState& s0, long long n_steps,
                        long long decimation) {
    OrbitTrace tr;
    tr.params = p;
    tr.initial = s0;
    tr.states.push_back(s0);
    tr.action_min = tr.action_max = s0.action;

    const bool pinball_path = (p.z == -1.0 && p.circle_len == 2.0);
    Angle ang(s0.angle);
    double act = s0.action;

    for (long long k = 1; k <= n_steps; ++k) {
        if (pinball_path && !(act > 0.0)) {
            tr.stop = StopReason::kDomainError;
            tr.stop_detail = "pinball action <= 0";
            break;
        }
        if (!pinball_path) {
            if (p.z_is_integer()) {
                if (p.z < 0.0 && act == 0.0) {
                    tr.stop = StopReason::kDomainError;
                    tr.stop_detail = "action = 0 with negative exponent";
                    break;
                }
            } else if (!(act > 0.0)) {
                tr.stop = StopReason::kDomainError;
                tr.stop_detail = "action <= 0 with fractional exponent";
                break;
            }
        }

        if (pinball_path)
            ang.add_quotient(p.alpha, act);
        else
            ang.add(p.alpha * action_power(act, p.z));
        ang.reduce(p.circle_len);
        const double v = ang.value();

        int side;
        if (ang.equals(0.0) || ang.equals(0.5 * p.circle_len)) {
            tr.singular_hits.push_back(k);
            if (p.singular_policy == SingularPolicy::kHalt) {
                tr.stop = StopReason::kSingularHalt;
                tr.stop_detail = "exact discontinuity landing";
                tr.step_count = k;
                break;
            }
            side = (p.singular_policy == SingularPolicy::kTreatAsPlus) ? +1 : -1;
        } else {
            side = gain_side(p, v);
        }
        act += side;
        tr.step_count = k;

        if (act < tr.action_min) tr.action_min = act;
        if (act > tr.action_max) tr.action_max = act;
        if (k % decimation == 0) tr.states.push_back({v, act});
    }
    return tr;
}

}  // namespace

OrbitTrace iterate(const MapParams& params, const CylState& s0, long long n_steps,
                   long long decimation) {
    params.validate();
    if (n_steps < 0) throw DomainError("iterate: n_steps must be >= 0");
    if (decimation < 1) throw DomainError("iterate: decimation must be >= 1");
    switch (params.numeric_policy) {
        case NumericPolicy::kDouble:
            return iterate_impl<detail::DoubleAngle>(params, s0, n_steps, decimation);
        case NumericPolicy::kCompensatedDouble:
            return iterate_impl<detail::CompensatedAngle>(params, s0, n_steps, decimation);
        case NumericPolicy::kDoubleDouble:
            return iterate_impl<detail::DDAngle>(params, s0, n_steps, decimation);
    }
    throw DomainError("iterate: unknown numeric policy");
}

EscapeFractionResult monotone_escape_fraction(const MapParams& params, double action0,
                                              int grid, double threshold,
                                              long long step_budget) {
    params.validate();
    if (grid < 1) throw DomainError("monotone_escape_fraction: grid must be >= 1");
    EscapeFractionResult res;
    res.grid = grid;
    res.threshold = threshold;
    res.step_budget = step_budget;

    for (int i = 0; i < grid; ++i) {
        double angle = params.circle_len * (i + 0.5) / grid;
        double act = action0;
        bool escaped = false;
        for (long long k = 0; k < step_budget; ++k) {
            double inc;
            try {
                inc = params.alpha * action_power(act, params.z);
            } catch (const DomainError&) {
                break;
            }
            angle = reduce_angle(angle + inc, params.circle_len);
            if (on_singular_line(params, angle)) break;  // disqualify, measure zero
            if (gain_side(params, angle) < 0) break;     // any loss disqualifies
            act += 1.0;
            if (act >= threshold) {
                escaped = true;
                break;
            }
        }
        if (escaped) ++res.escaped;
    }
    res.fraction = static_cast<double>(res.escaped) / grid;
    return res;
}

}  // namespace pinball
