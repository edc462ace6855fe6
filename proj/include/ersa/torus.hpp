#pragma once

#include <array>
#include <cstdint>

#include "ersa/percolation.hpp"
#include "ersa/process.hpp"

namespace ersa {

// Four-state marginals of a time-block cell:
// P(3) = 1-e^{-lambda0 delta}, P(2) = p_tilde + e^{-lambda0 delta} - 1,
// P(1) = e^{-lambda1 delta} - p_tilde, P(0) = 1 - e^{-lambda1 delta}.
std::array<double, 4> discrete_marginals(double lambda0, double p_tilde, double lambda1,
                                         double delta);

// delta(n) = (log n)^{-1/2}
double default_block_length(int n);

// Time-block discretization on the torus of side 20n. Cell (x, k) for
// k >= 0 reports the block [k delta, (k+1) delta); k = -1 encodes the
// diamond at x (black iff value in {2,3}).
struct XField {
    int n = 0;
    int side = 0;  // 20n
    double delta = 0, lambda0 = 0, lambda1 = 0, p_tilde = 0;
    int blocks = 0;  // block indices 0..blocks-1, blocks = floor(n/delta)+1
    std::vector<uint8_t> cells;  // octagon-major, slot 0 is k = -1

    uint8_t at(int oct_idx, int k) const { return cells[oct_idx * (blocks + 1) + (k + 1)]; }
    uint8_t& at(int oct_idx, int k) { return cells[oct_idx * (blocks + 1) + (k + 1)]; }
};

// Cells drawn i.i.d. from discrete_marginals.
XField sample_x_field(int n, double lambda0, double p_tilde, double lambda1, double delta,
                      uint64_t seed, uint64_t stream);

// Projection of a continuous field on the torus of side 20n: determined
// cells from the first arrival, free cells filled independently.
// Marginals match exactly when lambda0 = field lambda, lambda1 = 1 and
// p_tilde = field p; the field must have delta = 0.
XField project_to_x(const ArrivalField& f, int n, double delta, uint64_t seed,
                    uint64_t stream);

// Extremal witness times: even first arrival at its block's left
// endpoint (optionally plus the 2 delta delay), odd at its block's
// right endpoint; ties resolved odd before even. Returns the jammed
// colouring of the witness.
JammedColouring witness_colouring(const XField& xf, bool delayed);

// True iff the witness times satisfy the fast-arrival requirement
// (every even site arrives before sqrt(n)) and the delayed witness has
// a horizontal black crossing of one of the forty 18n x 2n rectangles
// with corners at multiples of 5n and 2n.
bool crude_event(const XField& xf);

// The undelayed counterpart without the fast-arrival requirement.
bool witness_f_event(const XField& xf);

struct TorusGapReport {
    Estimate torus;
    Estimate plane;
    double gap = 0;    // |difference of point estimates|
    double sigma = 0;  // one sigma of the coupled difference
};

// Crossing probability of a rectangle on the torus of side 2n versus
// the plane window on the same square, sharing variates site by site.
TorusGapReport torus_plane_gap(int n, const Rect& rect, const Params& params,
                               long long trials, uint64_t seed, int workers = 1);

}  // namespace ersa
