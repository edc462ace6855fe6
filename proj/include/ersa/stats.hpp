#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ersa {

struct Interval {
    double lo = 0, hi = 1;
};

// Wilson 95% score interval; well behaved near 0 and 1.
inline Interval wilson(long long successes, long long trials) {
    if (trials < 1) throw std::domain_error("wilson: trials >= 1 required");
    const double z = 1.959963984540054;
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double centre = (phat + z2 / (2 * n)) / denom;
    double half = z / denom * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
    return {centre - half, centre + half};
}

// One Wilson sigma: quarter of the 95% interval width.
inline double wilson_sigma(long long successes, long long trials) {
    Interval ci = wilson(successes, trials);
    return (ci.hi - ci.lo) / (2 * 1.959963984540054);
}

struct Estimate {
    double value = 0;
    double ci_lo = 0, ci_hi = 1;
    long long successes = 0;
    long long trials = 0;
    long long dense_failures = 0;

    double sigma() const { return (ci_hi - ci_lo) / (2 * 1.959963984540054); }
};

inline Estimate make_estimate(long long successes, long long trials,
                              long long dense_failures = 0) {
    Estimate e;
    e.successes = successes;
    e.trials = trials;
    e.dense_failures = dense_failures;
    e.value = static_cast<double>(successes) / static_cast<double>(trials);
    Interval ci = wilson(successes, trials);
    e.ci_lo = ci.lo;
    e.ci_hi = ci.hi;
    return e;
}

}  // namespace ersa
