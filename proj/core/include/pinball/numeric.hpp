#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace pinball {

/// Accumulation / angle-tracking precision used by the iteration drivers.
enum class NumericPolicy { kDouble, kCompensatedDouble, kDoubleDouble };

/// Neumaier-compensated accumulator.  Improves on Kahan by keeping the
/// correction correct when the addend is larger than the running sum.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }

    void reset(double v = 0.0) { sum = v; comp = 0.0; }
};

namespace detail {

struct TwoSum {
    double hi, lo;
};

inline TwoSum two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b| (or a == 0)
inline TwoSum quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline TwoSum two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace detail

/**
 * Double-double value: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
 * Gives ~32 significant decimal digits over the double exponent range.
 * Only the operations the orbit iteration needs are provided.
 */
class DDouble {
public:
    constexpr DDouble() : hi_(0.0), lo_(0.0) {}
    constexpr DDouble(double x) : hi_(x), lo_(0.0) {}
    constexpr DDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    double hi() const { return hi_; }
    double lo() const { return lo_; }
    double to_double() const { return hi_ + lo_; }

    static DDouble sum(double a, double b) {
        const auto s = detail::two_sum(a, b);
        return {s.hi, s.lo};
    }

    static DDouble product(double a, double b) {
        const auto p = detail::two_prod(a, b);
        return {p.hi, p.lo};
    }

    /// Correctly-rounded-to-dd quotient of two doubles.
    static DDouble quotient(double a, double b) {
        const double q1 = a / b;
        const double r = std::fma(-q1, b, a);
        const double q2 = r / b;
        const auto s = detail::quick_two_sum(q1, q2);
        return {s.hi, s.lo};
    }

    friend DDouble operator+(DDouble x, DDouble y) {
        const auto s = detail::two_sum(x.hi_, y.hi_);
        const auto t = detail::two_sum(x.lo_, y.lo_);
        double c = s.lo + t.hi;
        auto v = detail::quick_two_sum(s.hi, c);
        const double w = t.lo + v.lo;
        const auto z = detail::quick_two_sum(v.hi, w);
        return {z.hi, z.lo};
    }

    friend DDouble operator+(DDouble x, double y) {
        const auto s = detail::two_sum(x.hi_, y);
        const double v = x.lo_ + s.lo;
        const auto z = detail::quick_two_sum(s.hi, v);
        return {z.hi, z.lo};
    }

    friend DDouble operator-(DDouble x) { return {-x.hi_, -x.lo_}; }
    friend DDouble operator-(DDouble x, DDouble y) { return x + (-y); }
    friend DDouble operator-(DDouble x, double y) { return x + (-y); }

    friend DDouble operator*(DDouble x, DDouble y) {
        auto p = detail::two_prod(x.hi_, y.hi_);
        p.lo += x.hi_ * y.lo_ + x.lo_ * y.hi_;
        const auto z = detail::quick_two_sum(p.hi, p.lo);
        return {z.hi, z.lo};
    }

    friend DDouble operator*(DDouble x, double y) {
        auto p = detail::two_prod(x.hi_, y);
        p.lo += x.lo_ * y;
        const auto z = detail::quick_two_sum(p.hi, p.lo);
        return {z.hi, z.lo};
    }

    friend DDouble operator/(DDouble x, double y) {
        const double th = x.hi_ / y;
        const auto p = detail::two_prod(th, y);
        const double d = ((x.hi_ - p.hi) - p.lo) + x.lo_;
        const double tl = d / y;
        const auto z = detail::quick_two_sum(th, tl);
        return {z.hi, z.lo};
    }

    DDouble& operator+=(DDouble y) { return *this = *this + y; }
    DDouble& operator+=(double y) { return *this = *this + y; }
    DDouble& operator-=(DDouble y) { return *this = *this - y; }
    DDouble& operator-=(double y) { return *this = *this - y; }

    friend bool operator==(DDouble x, DDouble y) { return x.hi_ == y.hi_ && x.lo_ == y.lo_; }
    friend bool operator!=(DDouble x, DDouble y) { return !(x == y); }
    friend bool operator<(DDouble x, DDouble y) {
        return x.hi_ < y.hi_ || (x.hi_ == y.hi_ && x.lo_ < y.lo_);
    }
    friend bool operator>(DDouble x, DDouble y) { return y < x; }
    friend bool operator<=(DDouble x, DDouble y) { return !(y < x); }
    friend bool operator>=(DDouble x, DDouble y) { return !(x < y); }

    /// Largest integer-valued dd not exceeding x.  Valid because the pair is
    /// normalized: if hi has a fractional part, lo cannot move x across an
    /// integer boundary.
    friend DDouble floor(DDouble x) {
        const double fh = std::floor(x.hi_);
        if (fh != x.hi_) return {fh, 0.0};
        const auto z = detail::quick_two_sum(fh, std::floor(x.lo_));
        return {z.hi, z.lo};
    }

private:
    double hi_;
    double lo_;
};

/// x mod 1 in [0, 1); collapses a rounding-produced 1.0 to 0.
inline double frac_unit(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    if (f < 0.0) f = 0.0;
    return f;
}

/// Reduce x into [0, L), L in {1, 2}; rounding that lands exactly on L wraps to 0.
inline double reduce_angle(double x, double len) {
    if (x >= 0.0 && x < len) return x;
    double r = x - len * std::floor(x / len);
    if (r >= len) r -= len;
    if (r < 0.0) r = 0.0;
    return r;
}

}  // namespace pinball
