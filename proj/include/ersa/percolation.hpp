#pragma once

#include <cstdint>
#include <vector>

#include "ersa/geometry.hpp"
#include "ersa/process.hpp"
#include "ersa/stats.hpp"

namespace ersa {

struct CrossingSpec {
    enum Orientation { Horizontal, Vertical };
    Rect rect;
    Orientation orientation = Horizontal;
    bool black = true;
};

// Face colour under the jamming state: octagon x is black iff
// (x even and occupied) or (x odd and blocked); diamond per threshold.
bool face_black(const JammedColouring& jc, const Window& w, const Site& s);

// Crossing endpoints are octagons in the extreme columns (rows);
// diamonds are strictly interior faces. Optionally force one diamond's
// colour (base octagon index, or -1 for none).
bool has_crossing(const CrossingSpec& spec, const JammedColouring& jc, const Window& w,
                  int forced_diamond = -1, bool forced_black = false);

// Default locality buffer: 2*ceil(sqrt(long side)).
int default_buffer(const Rect& r);

// Monte Carlo estimate of h_rho(n, lambda, p, delta) on a plane window
// with the default buffer. dense_failures counts trials where the
// buffered locality event failed (trials still counted).
Estimate estimate_h(int n, double rho, const Params& params, long long trials,
                    uint64_t seed, int workers = 1, int buffer = -1);

// Lower-level estimator over an explicit spec; the window is the spec
// rectangle inflated by `buffer`.
Estimate estimate_crossing(const CrossingSpec& spec, const Params& params, int buffer,
                           long long trials, uint64_t seed, int workers = 1);

}  // namespace ersa
