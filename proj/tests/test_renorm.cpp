#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "pinball/escape.hpp"
#include "pinball/renorm.hpp"

using namespace pinball;

TEST_CASE("multiplier and regime") {
    CHECK(mu_of_alpha(1.0 / std::log(2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mu_of_alpha(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(mu_of_alpha(0.0), DomainError);
    CHECK_THROWS_AS(mu_of_alpha(-2.0), DomainError);

    CHECK(RenormContext::from_alpha(1.0 / std::log(2.9)).regime == MuRegime::kLow);
    CHECK(RenormContext::from_mu(3.0).regime == MuRegime::kHigh);
    const RenormContext ctx = RenormContext::from_mu(2.5);
    CHECK(ctx.strip0.width() == doctest::Approx(0.4));
    CHECK(ctx.strip1.width() == doctest::Approx(0.4));
}

TEST_CASE("correction function values and range") {
    CHECK(h_mu(2.0, 7.0) == 0.0);
    CHECK(h_mu(2.5, 1.0) == doctest::Approx(0.5));
    CHECK(h_mu(1.2, 2.0) == doctest::Approx(-0.4));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 20000; ++i) {
        const double mu = 1.0 + 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double x = 5000.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double h = h_mu(mu, x);
        const double chi = h_mu_chi(mu, x);
        CHECK((chi == 0.0 || chi == 1.0));
        CHECK(h > -1.0);
        CHECK(h <= 1.0);
    }
}

TEST_CASE("step-count formula against the iteration oracle") {
    CHECK(predicted_n(RenormContext::from_mu(2.0), 101) == 99);
    CHECK(predicted_n(RenormContext::from_mu(2.0), 1000) == 998);
    CHECK(predicted_n(RenormContext::from_mu(2.5), 200) == 298);

    for (double mu : {1.5, 2.0, 2.5}) {
        const RenormContext ctx = RenormContext::from_mu(mu);
        for (long long N = 50; N <= 4000; N = N * 5 / 4 + 1) {
            const oracle::Return ref = oracle::first_return(ctx.alpha, 1e-15, N);
            CHECK(predicted_n(ctx, N) == ref.up - 1);
        }
    }

    // irrational multiplier: the formula still tracks the oracle in the low regime
    const RenormContext e_ctx = RenormContext::from_alpha(1.0);
    for (long long N : {101, 257, 1024}) {
        const oracle::Return ref = oracle::first_return(1.0, 1e-15, N);
        CHECK(predicted_n(e_ctx, N) == ref.up - 1);
    }

    // high regime: the generalized integer part keeps tracking the oracle
    for (double mu : {3.5, 4.0, 5.0}) {
        const RenormContext ctx = RenormContext::from_mu(mu);
        CHECK(ctx.regime == MuRegime::kHigh);
        for (long long N : {100, 500, 2000}) {
            const oracle::Return ref = oracle::first_return(ctx.alpha, 1e-15, N);
            CHECK(predicted_n(ctx, N) == ref.up - 1);
        }
    }
}

TEST_CASE("case predictions at exact multipliers") {
    const RenormContext two = RenormContext::from_mu(2.0);
    CHECK(predicted_return_case(two, 101, 0.125, CaseId::kPlus).increment ==
          doctest::Approx(0.0));
    CHECK(predicted_return_case(two, 101, 0.125, CaseId::kPlus).phi_tilde_next ==
          doctest::Approx(0.125));

    // the corrected neutral branch is the identity mod 1; the displayed form
    // (2/mu)(H - 1/2) - 1 evaluates to 1/2 mod 1 and disagrees with the
    // measured neutral return by exactly 1 + 1/mu
    const CasePrediction zm = predicted_return_case(two, 101, 0.4, CaseId::kZeroMiddle);
    CHECK(zm.increment == doctest::Approx(0.0));
    CHECK(zm.phi_tilde_next == doctest::Approx(0.4));
    const double displayed = (2.0 / 2.0) * (h_mu(2.0, 100.0) - 0.5) - 1.0;
    const double gap = zm.increment - displayed;
    CHECK(gap == doctest::Approx(1.0 + 1.0 / 2.0));

    const RenormContext twofive = RenormContext::from_mu(2.5);
    CHECK(predicted_return_case(twofive, 200, 0.25, CaseId::kPlus).increment ==
          doctest::Approx(0.2));

    CHECK_THROWS_AS(predicted_return_case(RenormContext::from_mu(3.5), 101, 0.1, CaseId::kPlus),
                    DomainError);
}

TEST_CASE("neutral branches match the measured return map") {
    // left/middle/right neutral increments, checked dynamically: mu = 2.5 at
    // an even level has two interior plateaus (middle and right)
    const MapParams p = MapParams::pinball_exact_mu(2.5);
    const RenormContext ctx = RenormContext::from_params(p);
    const long long N = 402;
    const FiberAnalytics fa = analytic_fiber_intervals(p, static_cast<double>(N));
    const double R = fa.fiber_width;
    auto measured = [&](double pt) {
        const ReturnEvent ev = first_return(p, {pt * R, static_cast<double>(N)});
        REQUIRE(ev.classification == ReturnClass::kZero);
        double d = ev.phi_tilde_out - pt;
        d -= std::floor(d);
        return std::make_pair(d, fa.n_plus - 1 - ev.n);
    };
    auto [d_mid, j_mid] = measured(0.3);
    CHECK(j_mid == 0);
    CHECK(d_mid == doctest::Approx(predicted_return_case(ctx, N, 0.0, CaseId::kZeroMiddle)
                                       .phi_tilde_next)
                       .epsilon(0.01));
    auto [d_right, j_right] = measured(0.7);
    CHECK(j_right == 1);
    CHECK(d_right ==
          doctest::Approx(predicted_return_case(ctx, N, 0.0, CaseId::kZeroRight).phi_tilde_next)
              .epsilon(0.01));
}

TEST_CASE("compact-form map: values and recorded disagreement") {
    const RenormContext two = RenormContext::from_mu(2.0);
    // in the gain strip with chi_+ = 1 the compact form is the identity
    CHECK(g_mu(two, 101, 0.3, true, false) == doctest::Approx(0.0));
    CHECK(g_mu_form(two, 101, 0.3, true, false) == doctest::Approx(0.3));
    // outside both strips, no indicator: g = H + 1/2 (at mu = 2 the strips
    // cover the whole fiber, so this configuration needs mu > 2)
    const RenormContext twofive = RenormContext::from_mu(2.5);
    CHECK(g_mu(twofive, 101, 0.5, false, false) ==
          doctest::Approx(h_mu(2.5, 100.0) + 0.5));
    // in the loss strip with chi_- = 1
    CHECK(g_mu(twofive, 200, 0.7, false, true) ==
          doctest::Approx(h_mu(2.5, 198.0)));

    // Theorem-style compact form vs the proof's gain-case formula: they agree
    // at mu = 2 and differ by 1 - 2/mu mod 1 otherwise (recorded finding)
    const double case_inc = predicted_return_case(twofive, 201, 0.1, CaseId::kPlus).increment;
    const double g_inc = (2.0 / 2.5) * g_mu(twofive, 201, 0.1, true, false);
    double diff = g_inc - case_inc;
    diff -= std::floor(diff);
    CHECK(diff == doctest::Approx(1.0 - 2.0 / 2.5));
}

TEST_CASE("three-term asymptotic sum") {
    // against direct long-double summation
    CHECK(std::abs(s1_asymptotic(101, 99) - static_cast<double>(oracle::exact_s1(101, 99))) <=
          1e-8);
    for (long long N : {50, 101, 400}) {
        CHECK(std::abs(s1_asymptotic(N, 0) - static_cast<double>(oracle::exact_s1(N, 0))) <=
              1e-6);
    }
    // leading term: n = mu(N-1) - N at mu = 2 gives ln(mu)
    const long long N = 1000000;
    CHECK(s1_asymptotic(N, 2 * (N - 1) - N) == doctest::Approx(std::log(2.0)).epsilon(1e-5));

    // error decays at least as N^-3 on a dyadic sweep
    double prev_err = 0.0;
    double slope_sum = 0.0;
    int slopes = 0;
    for (long long n = 64; n <= 4096; n *= 2) {
        const long long m = 2 * (n - 1) - n;
        const double err =
            std::abs(s1_asymptotic(n, m) - static_cast<double>(oracle::exact_s1(n, m)));
        if (prev_err > 0.0 && err > 0.0) {
            slope_sum += std::log(err / prev_err) / std::log(2.0);
            ++slopes;
        }
        prev_err = err;
    }
    REQUIRE(slopes >= 4);
    CHECK(slope_sum / slopes <= -2.5);
}

TEST_CASE("gain-branch return is the identity plus the explicit drift at mu = 2") {
    // in the incoming-action rescaling, the gain branch satisfies
    // phi' = phi + drift(N) + O(N^-2); the O(N^-2) constant is ~1/8
    const MapParams p = MapParams::pinball_exact_mu(2.0);
    for (long long N : {500, 1000, 2000}) {
        const double R = p.alpha / (static_cast<double>(N) - 1.0);
        for (double pt : {0.05, 0.125, 0.2}) {
            const ReturnEvent ev = first_return(p, {pt * R, static_cast<double>(N)});
            REQUIRE(ev.classification == ReturnClass::kPlus);
            const double out_in_norm =
                (ev.action_in - 1.0) * ev.phi_out / p.alpha;
            const double resid = out_in_norm - pt - second_order_drift(N);
            CHECK(std::abs(resid) <= 0.3 / (static_cast<double>(N) * N));
        }
    }
}

TEST_CASE("case-prediction error decays like 1/I") {
    const MapParams p = MapParams::pinball_exact_mu(2.0);
    const RenormScan scan = renorm_error_scan(p, {100, 200, 400}, 300);
    REQUIRE(scan.rows.size() == 3);
    CHECK(scan.slope >= -1.5);
    CHECK(scan.slope <= -0.5);
    for (const auto& row : scan.rows) {
        CHECK(row.points_by_case[0] > 0);
        CHECK(row.points_by_case[1] > 0);
        CHECK(row.skipped_points == 0);
    }

    // degenerate scan: one level, one point
    const RenormScan one = renorm_error_scan(p, {200}, 1);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].max_abs_error >= 0.0);
    CHECK(one.rows[0].max_abs_error < 0.01);
}
