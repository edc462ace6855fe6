#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ersa {

// Probability vector (p_0, ..., p_k), k >= 1.
using ProbVector = std::vector<double>;

void validate_prob(const ProbVector& pv);

// Second largest entry.
double p_max_second(const ProbVector& pv);

// True iff q is stochastically larger: sum_{i<=j} (p_i - q_i) >= 0 for
// all j < k.
bool dominates(const ProbVector& p, const ProbVector& q);

// Staircase encoding: beta_p(x) = max{j : sum_{i<j} p_i <= x}.
int beta_p(const ProbVector& pv, double x);

// Flip of the ell-th binary digit (terminating expansion).
double digit_flip(int ell, double x);

// w_{ell,p}(f) = P[f(beta(U)) != f(beta(flip_ell(U)))], computed
// exactly from the dyadic-interval decomposition.
double w_ell(const ProbVector& pv, const std::vector<uint8_t>& f, int ell);

struct WTotal {
    double value = 0;       // sum of w_ell for ell <= l_cap
    double tail_bound = 0;  // rigorous bound on the remaining tail
};

WTotal w_total(const ProbVector& pv, const std::vector<uint8_t>& f, int l_cap = 64);

// Upper bound 3 k^2 pmax log(4/pmax) with pmax the second largest entry.
double key_bound(const ProbVector& pv);

struct BooleanTable {
    int k = 1, n = 1;
    std::vector<uint8_t> table;  // size (k+1)^n, coordinate 0 least significant

    size_t points() const { return table.size(); }
    int coord(size_t index, int j) const;
    void validate() const;
    bool is_increasing() const;
};

// P[f = 1] under the product measure pv^n, by exact enumeration.
double table_probability(const BooleanTable& f, const ProbVector& pv);

// Influence of coordinate j: probability the j-fiber is non-constant.
double influence(const BooleanTable& f, const ProbVector& pv, int j);
double total_influence(const BooleanTable& f, const ProbVector& pv);

struct SpectralVector {
    int m = 0;
    std::vector<double> coeff;  // indexed by subset bitmask
};

// Walsh-Fourier transform with the 2^{-m} normalization; forward and
// inverse, convolution via the transform, and the noise operator.
SpectralVector wht(const std::vector<double>& h);
std::vector<double> wht_inverse(const SpectralVector& s);
std::vector<double> convolve(const std::vector<double>& g, const std::vector<double>& h);
std::vector<double> noise(double eps, const std::vector<double>& h);

double l2_norm(const std::vector<double>& h);
double lp_norm(const std::vector<double>& h, double p);

// |4 sum_S |S| hhat(S)^2  -  sum_ell P[h != h o flip_ell]| on a binary
// table (values in {0,1}).
double tgw_residual(const std::vector<double>& h);

struct LemInflReport {
    bool hypothesis_met = false;
    bool holds = true;  // vacuously true when the hypothesis fails
    double a_star = 0;
    double total = 0;   // sum of influences
    double bound = 0;   // required lower bound
    double margin = 0;  // total - bound
    std::string note;
};

LemInflReport check_leminfl(const BooleanTable& f, const ProbVector& pv, double q);

struct SharpHypothesisReport {
    bool ok = false;
    std::string reason;        // first violated hypothesis, empty when ok
    double log_minimal_m = 0;  // natural log of the minimal symmetry order
    double minimal_m = 0;      // may overflow to infinity
};

SharpHypothesisReport sharpnm_hypothesis(const ProbVector& p, const ProbVector& q,
                                         double gamma, double m, double eta);

// Max over an h-grid of |finite-difference derivative of
// g(h) = P_{p + (-h,0,...,0,h)}[f=1] minus the exact influence sum|.
double discrete_mr_check(const BooleanTable& f, const ProbVector& pv, double gamma,
                         int steps);

}  // namespace ersa
