#pragma once

#include <optional>

#include "ersa/oracle.hpp"
#include "ersa/percolation.hpp"
#include "ersa/process.hpp"

namespace ersa {

enum class SiteClass { OddOctagon, EvenOctagon, Diamond };

struct PivotalQuery {
    Site site;
    SiteClass site_class = SiteClass::Diamond;
    CrossingSpec spec;

    void validate() const;
};

SiteClass classify(const Site& s);

// Class-specific pivotality: the crossing holds in the base
// configuration but fails after the prescribed single-site change
// (odd: t_x -> 0; even: t_x -> T_x + aux; diamond: black -> white).
// Even queries require the auxiliary rate-lambda delay variate.
bool is_pivotal(const PivotalQuery& q, const ArrivalField& f, const Params& params,
                std::optional<double> aux = std::nullopt);

Estimate estimate_phi(const PivotalQuery& q, const Params& params, long long trials,
                      uint64_t seed, int workers = 1, int buffer = -1);

struct RussoReport {
    // finite differences of the crossing probability
    double fd_p = 0, fd_lambda = 0, fd_delta = 0;
    double fd_p_sigma = 0, fd_lambda_sigma = 0, fd_delta_sigma = 0;
    // pivotal sums on the right-hand sides
    double sum_phi_diamond = 0, sum_phi_even_over_lambda = 0, sum_phi_odd_scaled = 0;
    double r_p = 0, r_lambda = 0, r_delta = 0;
    bool lambda_checked_at_delta0 = true;  // general-delta case is unverified
};

// Monte Carlo residuals for the three derivative identities, using
// common random numbers across the finite-difference evaluations.
RussoReport russo_residuals(int n, double rho, const Params& params, double h_step,
                            long long trials, uint64_t seed, int workers = 1);

// Exact check on an oracle instance: d/dp of P[crossing] versus the sum
// of diamond pivotal probabilities, both as polynomials in p. Returns
// the maximal coefficient discrepancy.
double oracle_mra_residual(const OracleInstance& inst, const Params& params,
                           const CrossingSpec& spec);

}  // namespace ersa
