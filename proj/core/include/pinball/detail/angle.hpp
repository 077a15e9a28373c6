#pragma once

#include <cmath>

#include "pinball/numeric.hpp"

namespace pinball::detail {

// Angle trackers used by the iteration drivers.  All three expose the same
// minimal surface: add an increment, reduce mod the circle length, read the
// current double representative, and test exact equality against a boundary.
// Exact-landing detection is bitwise on the reduced representative, per the
// singular-set policy contract.

struct DoubleAngle {
    double v = 0.0;

    explicit DoubleAngle(double x = 0.0) : v(x) {}
    void add(double inc) { v += inc; }
    void add_quotient(double num, double den) { v += num / den; }
    double value() const { return v; }
    void sub_exact(double m) { v -= m; }
    void reduce(double len) { v = reduce_angle(v, len); }
    bool equals(double b) const { return v == b; }
};

struct CompensatedAngle {
    NeumaierSum s;

    explicit CompensatedAngle(double x = 0.0) { s.reset(x); }
    void add(double inc) { s.add(inc); }
    void add_quotient(double num, double den) { s.add(num / den); }
    double value() const { return s.value(); }
    void sub_exact(double m) { s.add(-m); }
    void reduce(double len) {
        double v = value();
        if (v >= 0.0 && v < len) return;
        s.add(-len * std::floor(v / len));
        while (value() < 0.0) s.add(len);
        while (value() >= len) s.add(-len);
    }
    bool equals(double b) const { return value() == b; }
};

struct DDAngle {
    DDouble x;

    explicit DDAngle(double v = 0.0) : x(v) {}
    void add(double inc) { x += inc; }
    void add_quotient(double num, double den) { x += DDouble::quotient(num, den); }
    double value() const { return x.to_double(); }
    void sub_exact(double m) { x -= m; }
    void reduce(double len) {
        double v = value();
        if (v >= 0.0 && v < len) return;
        x -= floor(x * (1.0 / len)) * len;  // len is 1 or 2: exact scaling
        while (x < DDouble(0.0)) x += len;
        while (x >= DDouble(len)) x -= len;
    }
    bool equals(double b) const { return x == DDouble(b); }
};

}  // namespace pinball::detail
