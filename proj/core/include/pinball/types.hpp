#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "pinball/numeric.hpp"

namespace pinball {

/// Which half-circle gains action.
///   kAzHalf:         action jumps by sgn(angle' - L/2): gain on the upper half,
///                    the family as usually written on the unit circle.
///   kPinballProofs:  gain on (0, L/2), loss on (L/2, L); the orientation all
///                    return-map analysis in this library assumes.
enum class SignVariant { kAzHalf, kPinballProofs };

/// What to do when an iterate lands exactly on a discontinuity line.
enum class SingularPolicy { kHalt, kTreatAsPlus, kTreatAsMinus };

class MapError : public std::runtime_error {
public:
    explicit MapError(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside an operation's domain (bad parameters, action out of range, ...).
class DomainError : public MapError {
public:
    explicit DomainError(const std::string& what) : MapError(what) {}
};

/// Exact landing on a discontinuity line under SingularPolicy::kHalt.
class SingularHit : public MapError {
public:
    explicit SingularHit(const std::string& what) : MapError(what) {}
};

/// A first-return search exceeded its iteration budget.
class BudgetExceeded : public MapError {
public:
    explicit BudgetExceeded(const std::string& what) : MapError(what) {}
};

/// The step-count formula evaluated to something not near an integer.
class NonIntegerPrediction : public MapError {
public:
    NonIntegerPrediction(const std::string& what, double value)
        : MapError(what), value(value) {}
    double value;
};

/// Family parameters of the alpha-z maps.
struct MapParams {
    double alpha = 1.0;
    double z = -1.0;
    double circle_len = 2.0;
    SignVariant sign_variant = SignVariant::kPinballProofs;
    SingularPolicy singular_policy = SingularPolicy::kHalt;
    NumericPolicy numeric_policy = NumericPolicy::kCompensatedDouble;
    /// Set when alpha was constructed as 1/ln(mu) for an exactly known mu, so
    /// that downstream renormalization formulas can use the exact multiplier.
    std::optional<double> exact_mu;

    void validate() const {
        if (!(alpha > 0.0)) throw DomainError("MapParams: alpha must be > 0");
        if (circle_len != 1.0 && circle_len != 2.0)
            throw DomainError("MapParams: circle_len must be 1 or 2");
    }

    bool z_is_integer() const {
        return z == std::nearbyint(z) && std::abs(z) < 1e9;
    }

    /// exp(1/alpha), exact when the construction recorded it.
    double mu() const { return exact_mu ? *exact_mu : std::exp(1.0 / alpha); }

    static MapParams pinball(double alpha,
                             NumericPolicy policy = NumericPolicy::kCompensatedDouble,
                             SingularPolicy singular = SingularPolicy::kHalt) {
        MapParams p;
        p.alpha = alpha;
        p.z = -1.0;
        p.circle_len = 2.0;
        p.sign_variant = SignVariant::kPinballProofs;
        p.singular_policy = singular;
        p.numeric_policy = policy;
        return p;
    }

    /// Pinball with alpha = 1/ln(mu) and the multiplier carried exactly.
    static MapParams pinball_exact_mu(double mu,
                                      NumericPolicy policy = NumericPolicy::kCompensatedDouble,
                                      SingularPolicy singular = SingularPolicy::kHalt) {
        MapParams p = pinball(1.0 / std::log(mu), policy, singular);
        p.exact_mu = mu;
        return p;
    }
};

/// A point on the cylinder.
struct CylState {
    double angle = 0.0;   // in [0, circle_len)
    double action = 0.0;  // on an integer-shifted lattice along any orbit
};

/// Closed-open interval bookkeeping for fiber decompositions.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool empty() const { return !(hi > lo); }
    bool contains(double x) const { return x > lo && x < hi; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

}  // namespace pinball
