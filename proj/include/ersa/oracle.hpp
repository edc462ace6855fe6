#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ersa/geometry.hpp"
#include "ersa/process.hpp"

// Brute-force oracle for instances of at most 9 octagons: exact jamming
// distribution via the competing-exponentials order formula, with the
// delay handled by summing over zero-time odd subsets. Event
// probabilities come out as polynomials in the enhancement parameter p.

namespace ersa {

// Dense polynomial in p, coefficients by ascending power.
struct Poly {
    std::vector<double> c;

    Poly() : c{0.0} {}
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}
    static Poly constant(double v) { return Poly{{v}}; }

    double eval(double p) const;
    Poly derivative() const;
    Poly& operator+=(const Poly& o);
    Poly operator*(const Poly& o) const;
    Poly scaled(double s) const;
    double max_coeff_diff(const Poly& o) const;
};

constexpr int kOracleMaxSites = 9;

struct OracleInstance {
    Window window;        // a small plane window; sites are its octagons
    std::vector<int> diamonds;  // base octagon indices of enhancement sites

    // every diamond whose four octagons lie in the window
    static OracleInstance from_window(const Window& w);
};

struct OracleDistribution {
    // occupied-set bitmask over octagon indices -> exact probability
    std::vector<double> prob;  // size 2^sites, zero for unreachable states
    double total = 0;          // should be 1 within 1e-12
};

OracleDistribution exact_oracle(const OracleInstance& inst, const Params& params);

// P[site occupied] from a distribution.
double occupied_probability(const OracleDistribution& d, int site_idx);

// Event over (occupied bitmask, diamond-black bitmask); diamond bit i
// refers to inst.diamonds[i]. Returns the exact probability as a
// polynomial in p.
Poly oracle_event_poly(const OracleInstance& inst, const Params& params,
                       const std::function<bool(uint32_t, uint32_t)>& event);

// Builds a JammedColouring for this instance from explicit occupation
// and diamond masks, for reuse of the crossing machinery.
JammedColouring colouring_from_masks(const OracleInstance& inst, uint32_t occupied,
                                     uint32_t dia_mask);

}  // namespace ersa
