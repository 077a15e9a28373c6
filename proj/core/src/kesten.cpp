#include "pinball/kesten.hpp"

#include <cmath>
#include <numeric>

#include "pinball/numeric.hpp"

namespace pinball {

namespace {

Rational reduced(const Rational& a) {
    if (a.den == 0) throw DomainError("Rational: zero denominator");
    long long n = a.num, d = a.den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return {g ? n / g : n, g ? d / g : d};
}

// -1 below the half line, +1 above; 0 flags the exact landing
int half_sign(double x) {
    if (x == 0.5) return 0;
    return x > 0.5 ? +1 : -1;
}

}  // namespace

DiscrepancySeries ek_orbit(double alpha, double x0, double y0, long long steps,
                           long long decimation, SingularPolicy policy) {
    if (steps < 0) throw DomainError("ek_orbit: steps must be >= 0");
    if (decimation < 1) decimation = 1;

    DiscrepancySeries out;
    out.alpha = alpha;
    out.x0 = x0;
    out.y0 = y0;
    out.y_min = out.y_max = y0;
    out.y_values.emplace_back(0, y0);

    NeumaierSum x;
    x.reset(reduce_angle(x0, 1.0));
    long long off = 0;
    for (long long k = 1; k <= steps; ++k) {
        x.add(alpha);
        if (x.value() >= 1.0 || x.value() < 0.0) {
            x.add(-std::floor(x.value()));
            while (x.value() < 0.0) x.add(1.0);
            while (x.value() >= 1.0) x.add(-1.0);
        }
        int s = half_sign(x.value());
        if (s == 0) {
            ++out.singular_hits;
            if (policy == SingularPolicy::kHalt) {
                out.halted = true;
                break;
            }
            s = policy == SingularPolicy::kTreatAsPlus ? +1 : -1;
        }
        off += s;
        out.steps = k;
        const double y = y0 + static_cast<double>(off);
        if (y < out.y_min) out.y_min = y;
        if (y > out.y_max) out.y_max = y;
        if (off == 0) ++out.zero_crossings;
        if (k % decimation == 0) out.y_values.emplace_back(k, y);
    }
    return out;
}

DiscrepancySeries ek_orbit(const Rational& alpha, double x0, double y0, long long steps,
                           long long decimation, SingularPolicy policy) {
    if (steps < 0) throw DomainError("ek_orbit: steps must be >= 0");
    if (decimation < 1) decimation = 1;

    const Rational a = reduced(alpha);
    DiscrepancySeries out;
    out.alpha = static_cast<double>(a.num) / static_cast<double>(a.den);
    out.alpha_exact = a;
    out.x0 = x0;
    out.y0 = y0;
    out.y_min = out.y_max = y0;
    out.y_values.emplace_back(0, y0);

    const long long q = a.den;
    const long long p = ((a.num % q) + q) % q;
    const double base = reduce_angle(x0, 1.0);
    long long r = 0;
    long long off = 0;
    for (long long k = 1; k <= steps; ++k) {
        r += p;
        if (r >= q) r -= q;
        double x = base + static_cast<double>(r) / static_cast<double>(q);
        if (x >= 1.0) x -= 1.0;
        int s = half_sign(x);
        if (s == 0) {
            ++out.singular_hits;
            if (policy == SingularPolicy::kHalt) {
                out.halted = true;
                break;
            }
            s = policy == SingularPolicy::kTreatAsPlus ? +1 : -1;
        }
        off += s;
        out.steps = k;
        const double y = y0 + static_cast<double>(off);
        if (y < out.y_min) out.y_min = y;
        if (y > out.y_max) out.y_max = y;
        if (off == 0) ++out.zero_crossings;
        if (k % decimation == 0) out.y_values.emplace_back(k, y);
    }
    return out;
}

PeriodScanResult period_scan(const Rational& alpha, long long grid) {
    if (grid < 2) throw DomainError("period_scan: grid must be >= 2");
    const Rational a = reduced(alpha);

    PeriodScanResult res;
    res.grid = grid;

    // common denominator for grid points, the rotation, and the half line
    const long long q = a.den;
    const long long d0 = std::lcm(grid, q);
    const long long D = std::lcm(d0, 2LL);
    const long long step = ((a.num % q) + q) % q * (D / q);
    const long long half = D / 2;

    bool all_two = true;
    for (long long i = 0; i < grid; ++i) {
        const long long a0 = i * (D / grid);
        const long long a1 = (a0 + step) % D;
        const long long a2 = (a1 + step) % D;
        if (a1 == half || a2 == half) {
            ++res.singular_skipped;
            continue;
        }
        ++res.tested;
        // y jumps by +-1 every step, so period 1 cannot occur; period exactly
        // two means the base returns and the two jumps cancel
        const int j1 = a1 > half ? +1 : -1;
        const int j2 = a2 > half ? +1 : -1;
        if (!(a2 == a0 && j1 + j2 == 0)) all_two = false;
    }
    res.all_period_two = all_two && res.tested > 0;
    return res;
}

}  // namespace pinball
