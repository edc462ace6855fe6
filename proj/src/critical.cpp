#include "ersa/critical.hpp"

#include <cmath>

namespace ersa {

DualityReport duality_residual(int n, const Params& params, long long trials, uint64_t seed,
                               int workers, int buffer) {
    params.validate();
    if (params.delta != 0) throw std::domain_error("duality_residual: delta = 0 required");
    Params dual{1.0 / params.lambda, 1.0 - params.p, 0.0};
    DualityReport rep;
    rep.side_a = estimate_h(n, 1.0, params, trials, seed, workers, buffer);
    if (params.lambda == 1.0 && params.p == 0.5) {
        rep.side_b = rep.side_a;  // self-dual point: residual is exactly |2h - 1|
    } else {
        uint64_t seed_b = seed ^ 0x517cc1b727220a95ULL;  // decorrelate the two sides
        rep.side_b = estimate_h(n, 1.0, dual, trials, seed_b, workers, buffer);
    }
    rep.residual = std::abs(rep.side_a.value + rep.side_b.value - 1.0);
    rep.sigma = (params.lambda == 1.0 && params.p == 0.5)
                    ? 2.0 * rep.side_a.sigma()
                    : std::hypot(rep.side_a.sigma(), rep.side_b.sigma());
    return rep;
}

BisectResult bisect_lambda_c(double p, int n, long long trials, double target, double tol,
                             uint64_t seed, double lambda_lo, double lambda_hi, double delta,
                             int workers, double rho, long long trials_cap) {
    if (!(p >= 0 && p <= 1)) throw std::domain_error("bisect: p in [0,1] required");
    if (!(0 < lambda_lo && lambda_lo < lambda_hi))
        throw std::domain_error("bisect: 0 < lambda_lo < lambda_hi required");
    if (!(target > 0 && target < 1)) throw std::domain_error("bisect: target in (0,1) required");
    if (!(tol > 0)) throw std::domain_error("bisect: positive tol required");
    if (trials_cap <= 0) trials_cap = 32 * trials;

    auto eval = [&](double lambda, long long t) {
        return estimate_h(n, rho, Params{lambda, p, delta}, t, seed, workers);
    };

    BisectResult res;
    res.p = p;
    res.n = n;

    Estimate at_lo = eval(lambda_lo, trials);
    Estimate at_hi = eval(lambda_hi, trials);
    if (!(at_lo.ci_hi < target && at_hi.ci_lo > target))
        throw std::domain_error("bisect: bracket does not separate the target");

    double lo = lambda_lo, hi = lambda_hi;
    long long t = trials;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        Estimate h = eval(mid, t);
        res.steps.push_back({lo, hi, mid, h, t});
        if (h.ci_lo < target && target < h.ci_hi && t < trials_cap) {
            t = std::min(trials_cap, 2 * t);  // CI straddles: more trials, same bracket
            continue;
        }
        res.h_at_mid = h;
        res.trials_final = t;
        if (h.value > target)
            hi = mid;
        else
            lo = mid;
    }
    res.lambda_lo = lo;
    res.lambda_hi = hi;
    res.converged = true;
    if (res.steps.empty()) {
        res.h_at_mid = eval(0.5 * (lo + hi), t);
        res.trials_final = t;
    }
    return res;
}

std::vector<TraceRow> trace_surface(const std::vector<double>& p_grid, int n, long long trials,
                                    uint64_t seed, double lambda_lo, double lambda_hi,
                                    double tol, int workers) {
    std::vector<TraceRow> rows;
    for (double p : p_grid) {
        TraceRow row;
        row.p = p;
        try {
            row.result =
                bisect_lambda_c(p, n, trials, 0.5, tol, seed, lambda_lo, lambda_hi, 0.0, workers);
            row.ok = row.result.converged;
        } catch (const std::domain_error&) {
            row.ok = false;
            row.result.p = p;
            row.result.n = n;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ersa
