#pragma once

#include <cstdint>
#include <vector>

#include "ersa/percolation.hpp"

namespace ersa {

struct DualityReport {
    Estimate side_a;   // h_1(n, lambda, p)
    Estimate side_b;   // h_1(n, 1/lambda, 1-p)
    double residual = 0;  // |a + b - 1|
    double sigma = 0;     // combined one-sigma error
};

// Finite-box duality check on squares: h_1(n,lambda,p) + h_1(n,1/lambda,1-p)
// should equal 1 up to buffer bias. Requires delta = 0.
DualityReport duality_residual(int n, const Params& params, long long trials, uint64_t seed,
                               int workers = 1, int buffer = -1);

struct BisectStep {
    double lambda_lo = 0, lambda_hi = 0, mid = 0;
    Estimate h;
    long long trials = 0;
};

struct BisectResult {
    double p = 0;
    int n = 0;
    double lambda_lo = 0, lambda_hi = 0;  // final bracket, width <= tol on success
    Estimate h_at_mid;
    long long trials_final = 0;
    bool converged = false;
    std::vector<BisectStep> steps;
};

// Pseudo-critical rate: the lambda where the wide-rectangle crossing
// estimate crosses `target`, located by bisection. Crossing probability
// is nondecreasing in lambda, and common seeds across evaluations keep
// the comparisons monotone sample-wise. When the confidence interval
// straddles the target the step is retried with doubled trials, up to
// trials_cap (0 means 32x the base trials).
BisectResult bisect_lambda_c(double p, int n, long long trials, double target, double tol,
                             uint64_t seed, double lambda_lo, double lambda_hi,
                             double delta = 0.0, int workers = 1, double rho = 3.0,
                             long long trials_cap = 0);

struct TraceRow {
    double p = 0;
    BisectResult result;
    bool ok = false;
};

// lambda_c(p) over a grid of p values; failed bisections are flagged
// rather than fatal.
std::vector<TraceRow> trace_surface(const std::vector<double>& p_grid, int n, long long trials,
                                    uint64_t seed, double lambda_lo = 0.2,
                                    double lambda_hi = 8.0, double tol = 0.1, int workers = 1);

}  // namespace ersa
