#include <doctest.h>

#include <cmath>

#include "pinball/kesten.hpp"

using namespace pinball;

TEST_CASE("alpha = 1/2 oscillates with period two") {
    const DiscrepancySeries s = ek_orbit(Rational{1, 2}, 0.2, 0.0, 10, 1);
    REQUIRE(s.y_values.size() == 11);
    for (size_t k = 0; k < s.y_values.size(); ++k) {
        CHECK(s.y_values[k].second == (k % 2 == 0 ? 0.0 : 1.0));
    }
    CHECK(s.zero_crossings == 5);
    CHECK(s.y_min == 0.0);
    CHECK(s.y_max == 1.0);
}

TEST_CASE("alpha = 1 walks down linearly from x0 below the half line") {
    const DiscrepancySeries s = ek_orbit(Rational{1, 1}, 0.3, 0.0, 1000, 100);
    CHECK(s.steps == 1000);
    CHECK(s.y_values.back().second == -1000.0);
    CHECK(s.y_min == -1000.0);
    CHECK(s.y_max == 0.0);
    CHECK(s.zero_crossings == 0);

    // same through the floating path
    const DiscrepancySeries f = ek_orbit(1.0, 0.3, 0.0, 1000, 100);
    CHECK(f.y_values.back().second == -1000.0);
}

TEST_CASE("golden-mean rotation recrosses its level and stays in a narrow band") {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const DiscrepancySeries s = ek_orbit(golden, 0.1, 0.0, 1000000, 10000);
    CHECK(s.steps == 1000000);
    CHECK(s.zero_crossings >= 50);
    CHECK(s.y_max - s.y_min <= 1000.0);
}

TEST_CASE("rational rotation: periodic base orbit with a constant drift per period") {
    const DiscrepancySeries s = ek_orbit(Rational{3, 7}, 0.15, 2.0, 70, 1);
    REQUIRE(s.y_values.size() == 71);
    const double first_period = s.y_values[7].second - s.y_values[0].second;
    for (int j = 1; j < 10; ++j) {
        const double inc = s.y_values[7 * (j + 1)].second - s.y_values[7 * j].second;
        CHECK(inc == first_period);
    }
    // unit-jump lattice around y0
    for (const auto& [k, y] : s.y_values) {
        const double d = y - 2.0;
        CHECK(d == std::nearbyint(d));
    }
}

TEST_CASE("exact landing on the half line follows the policy") {
    // x0 = 0, alpha = 1/2: the first step lands exactly on 1/2
    const DiscrepancySeries halted = ek_orbit(Rational{1, 2}, 0.0, 0.0, 10, 1);
    CHECK(halted.halted);
    CHECK(halted.singular_hits == 1);
    CHECK(halted.steps < 10);

    const DiscrepancySeries pushed =
        ek_orbit(Rational{1, 2}, 0.0, 0.0, 10, 1, SingularPolicy::kTreatAsPlus);
    CHECK_FALSE(pushed.halted);
    CHECK(pushed.steps == 10);
    CHECK(pushed.singular_hits == 5);
}

TEST_CASE("period scan is exact") {
    const PeriodScanResult two = period_scan(Rational{1, 2}, 100);
    CHECK(two.all_period_two);
    CHECK(two.tested == 98);
    CHECK(two.singular_skipped == 2);

    CHECK_FALSE(period_scan(Rational{1, 3}, 100).all_period_two);

    // minimal grid: both points of the alpha = 1/2 scan touch the singular line
    const PeriodScanResult tiny = period_scan(Rational{1, 2}, 2);
    CHECK(tiny.tested + tiny.singular_skipped == 2);

    CHECK_THROWS_AS(period_scan(Rational{1, 2}, 1), DomainError);
    CHECK_THROWS_AS(period_scan(Rational{1, 0}, 10), DomainError);
}
