#pragma once

// Test-local oracles, deliberately independent of the library's iteration
// machinery: plain double arithmetic, no compensation, no shared helpers.

#include <cmath>
#include <stdexcept>

namespace oracle {

struct Return {
    long long up = 0, down = 0;
    double s1 = 0.0, s2 = 0.0;
    double d1 = 0.0, d2 = 0.0;
    double phi_out = 0.0, action_out = 0.0;
    long long steps = 0;
};

// First return of the pinball map (gain on (0,1)) by raw step-by-step
// iteration on the covering line.
inline Return first_return(double alpha, double phi, double action) {
    Return r;
    double pos = phi;
    double act = action;
    bool crossed = false;
    double prev = phi;
    const long long budget =
        static_cast<long long>(4.0 * std::exp(1.0 / alpha) * action + 64.0);
    for (long long step = 1;; ++step) {
        if (step > budget) throw std::runtime_error("oracle budget exceeded");
        const double div = act;
        pos += alpha / div;
        if (pos >= 2.0) {
            r.phi_out = pos - 2.0;
            r.action_out = act + 1.0;
            r.steps = step;
            return r;
        }
        if (!crossed && pos > 1.0) {
            r.d1 = 1.0 - prev;
            r.d2 = pos - 1.0;
            act -= 1.0;
            crossed = true;
        } else if (!crossed) {
            r.s1 += 1.0 / div;
            act += 1.0;
            ++r.up;
        } else {
            r.s2 += 1.0 / div;
            act -= 1.0;
            ++r.down;
        }
        prev = pos;
    }
}

// Direct long-double summation of sum_{k=0}^{n} 1/(N+k).
inline long double exact_s1(long long N, long long n) {
    long double s = 0.0L;
    for (long long k = n; k >= 0; --k) s += 1.0L / static_cast<long double>(N + k);
    return s;
}

}  // namespace oracle
