#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ersa/geometry.hpp"
#include "ersa/rng.hpp"

namespace ersa {

struct Params {
    double lambda = 1.0;  // arrival rate at even octagons
    double p = 0.5;       // diamond black probability
    double delta = 0.0;   // even-site delay (zero-time reformulation)

    void validate() const {
        if (!(lambda > 0)) throw std::domain_error("lambda must be positive");
        if (!(p >= 0 && p <= 1)) throw std::domain_error("p must lie in [0,1]");
        if (!(delta >= 0)) throw std::domain_error("delta must be nonnegative");
    }
};

// Standard variates per site. Rates and thresholds are applied lazily,
// so one field evaluated at two comparable parameter points yields a
// monotone coupling.
struct ArrivalField {
    Window window;
    Params params;                 // defaults used when none are passed
    std::vector<double> std_exp;   // standard exponential per octagon
    std::vector<double> delay_u;   // uniform per octagon (odd sites only)
    std::vector<double> diamond_u; // uniform per diamond, by base octagon
    std::vector<uint8_t> even;     // parity cache

    double raw_time(int idx, const Params& pr) const {
        return even[idx] ? std_exp[idx] / pr.lambda : std_exp[idx];
    }
    // t_x = 0 if x odd and U_x <= 1 - e^{-delta}, else T_x
    double effective_time(int idx, const Params& pr) const {
        if (!even[idx] && pr.delta > 0 && delay_u[idx] <= -std::expm1(-pr.delta)) return 0.0;
        return raw_time(idx, pr);
    }
    bool diamond_black(int base_idx, const Params& pr) const {
        return diamond_u[base_idx] < pr.p;
    }
};

ArrivalField sample_arrivals(const Window& w, const Params& params, uint64_t seed,
                             uint64_t stream);

struct TieError : std::runtime_error {
    TieError() : std::runtime_error("tie among positive arrival times; resample") {}
};

enum class OctState : uint8_t { Occupied, Blocked };

struct JammedColouring {
    std::vector<OctState> oct_state;  // per octagon index
    std::vector<uint8_t> oct_black;   // even & occupied, or odd & blocked
    std::vector<uint8_t> dia_black;   // per diamond, by base octagon index
};

// A single-site arrival-time override (site index -> replacement time).
using TimeOverride = std::pair<int, double>;

JammedColouring resolve_jamming(const ArrivalField& f, const Params& params,
                                std::span<const TimeOverride> overrides = {});

// Jamming dynamics applied to an explicit arrival order; the caller is
// responsible for tie handling.
std::vector<OctState> occupy_in_order(const Window& w, const std::vector<int>& order);

// The "affects" relation: x affects y iff a path from a neighbour of x
// to y has nondecreasing odd-site arrival times in path order.
bool affects(const Site& x, const Site& y, const ArrivalField& f, const Params& params);

constexpr int kUnassignedGeneration = -1;

// Generation partition rooted at x; sites that cannot be classified on
// a finite free-boundary window are flagged kUnassignedGeneration.
std::vector<int> generations(const ArrivalField& f, const Params& params, const Site& root);

// True iff no site outside inflate(r, buffer) affects any octagon in r.
bool e_dense(const Rect& r, int buffer, const ArrivalField& f, const Params& params);

// Monotone coupling: both colourings from one set of standard variates.
std::pair<JammedColouring, JammedColouring> coupled_colouring(const ArrivalField& f,
                                                              const Params& lo,
                                                              const Params& hi);

}  // namespace ersa
