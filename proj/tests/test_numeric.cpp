#include <doctest.h>

#include <cmath>
#include <random>

#include "pinball/numeric.hpp"

using namespace pinball;

TEST_CASE("neumaier sum tracks the harmonic series better than naive addition") {
    NeumaierSum comp;
    double naive = 0.0;
    long double ref = 0.0L;
    for (long long k = 1; k <= 2000000; ++k) {
        const double term = 1.0 / static_cast<double>(k);
        comp.add(term);
        naive += term;
        ref += 1.0L / static_cast<long double>(k);
    }
    const double err_comp = std::abs(static_cast<double>(comp.value() - ref));
    const double err_naive = std::abs(static_cast<double>(naive - ref));
    CHECK(err_comp < 1e-15);
    CHECK(err_comp * 10 < err_naive);
}

TEST_CASE("neumaier sum survives cancellation with a large addend") {
    NeumaierSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 2.0);
}

TEST_CASE("double-double quotient carries ~32 digits") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        const double a = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-54;
        const double b = 1.0 + static_cast<double>(rng() % 100000);
        const DDouble q = DDouble::quotient(a, b);
        const long double ref = static_cast<long double>(a) / static_cast<long double>(b);
        const long double got = static_cast<long double>(q.hi()) + static_cast<long double>(q.lo());
        CHECK(std::abs(static_cast<double>(got - ref)) <= 1e-25 * std::abs(a / b));
    }
}

TEST_CASE("double-double addition is exact where plain addition rounds") {
    DDouble x(1.0);
    x += 1e-20;
    x -= 1.0;
    CHECK(x.to_double() == doctest::Approx(1e-20).epsilon(1e-12));
}

TEST_CASE("double-double accumulated rotation beats compensated long double") {
    DDouble pos(0.01);
    // reference: Neumaier-compensated long double, good to a few 1e-19 ulps
    long double ref = 0.01L, comp = 0.0L;
    for (int k = 0; k < 100000; ++k) {
        const double div = 1000.0 + (k % 37);
        pos += DDouble::quotient(1.0, div);
        const long double v = 1.0L / static_cast<long double>(div);
        const long double t = ref + v;
        comp += (std::abs(ref) >= std::abs(v)) ? (ref - t) + v : (v - t) + ref;
        ref = t;
    }
    ref += comp;
    const long double got =
        static_cast<long double>(pos.hi()) + static_cast<long double>(pos.lo());
    CHECK(std::abs(static_cast<double>(got - ref)) < 1e-15);
}

TEST_CASE("double-double floor handles integer high parts") {
    CHECK(floor(DDouble(2.0, 1e-20)).to_double() == 2.0);
    CHECK(floor(DDouble(2.0, -1e-20)).to_double() == 1.0);
    CHECK(floor(DDouble(2.5, -1e-20)).to_double() == 2.0);
    CHECK(floor(DDouble(-0.25)).to_double() == -1.0);
}

TEST_CASE("double-double ordering") {
    CHECK(DDouble(1.0, 1e-20) > DDouble(1.0));
    CHECK(DDouble(1.0, -1e-20) < DDouble(1.0));
    CHECK(DDouble(1.0) == DDouble(1.0, 0.0));
    CHECK(DDouble(2.0) >= DDouble(1.0, 1e-17));
}

TEST_CASE("reduce_angle keeps the closed-open contract") {
    CHECK(reduce_angle(2.5, 2.0) == 0.5);
    CHECK(reduce_angle(-0.5, 2.0) == 1.5);
    CHECK(reduce_angle(4.0, 2.0) == 0.0);
    CHECK(reduce_angle(1.25, 2.0) == 1.25);
    // rounding that would land exactly on the circle length wraps to 0
    CHECK(reduce_angle(-1e-18, 2.0) == 0.0);
    for (double x : {0.0, 0.999999, 7.25, -3.75, 1e9 + 0.5}) {
        const double r = reduce_angle(x, 1.0);
        CHECK(r >= 0.0);
        CHECK(r < 1.0);
    }
}
