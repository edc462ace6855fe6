#include "ersa/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace ersa {

void validate_prob(const ProbVector& pv) {
    if (pv.size() < 2) throw std::domain_error("probability vector: length >= 2 required");
    double s = 0;
    for (double v : pv) {
        if (v < 0) throw std::domain_error("probability vector: negative entry");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) throw std::domain_error("probability vector: sum != 1");
}

double p_max_second(const ProbVector& pv) {
    validate_prob(pv);
    double first = -1, second = -1;
    for (double v : pv) {
        if (v > first) {
            second = first;
            first = v;
        } else if (v > second) {
            second = v;
        }
    }
    return second;
}

bool dominates(const ProbVector& p, const ProbVector& q) {
    if (p.size() != q.size()) throw std::domain_error("dominates: length mismatch");
    double s = 0;
    for (size_t j = 0; j + 1 < p.size(); ++j) {
        s += p[j] - q[j];
        if (s < -1e-12) return false;
    }
    return true;
}

int beta_p(const ProbVector& pv, double x) {
    validate_prob(pv);
    if (!(x >= 0 && x < 1)) throw std::domain_error("beta_p: x in [0,1) required");
    double cum = 0;
    const int k = static_cast<int>(pv.size()) - 1;
    for (int j = 0; j < k; ++j) {
        cum += pv[j];
        if (x < cum) return j;
    }
    return k;
}

double digit_flip(int ell, double x) {
    if (ell < 1) throw std::domain_error("digit_flip: ell >= 1 required");
    if (!(x >= 0 && x < 1)) throw std::domain_error("digit_flip: x in [0,1) required");
    double step = std::ldexp(1.0, -ell);
    auto digit = static_cast<long long>(std::floor(x / step));
    return (digit & 1) ? x - step : x + step;
}

namespace {

int beta_ld(const std::vector<long double>& cum, long double x) {
    // cum has k+1 entries: cumulative sums p_0, p_0+p_1, ..., 1
    const int k = static_cast<int>(cum.size()) - 1;
    for (int j = 0; j < k; ++j)
        if (x < cum[j]) return j;
    return k;
}

std::vector<long double> cumulative(const ProbVector& pv) {
    std::vector<long double> cum(pv.size());
    long double s = 0;
    for (size_t j = 0; j < pv.size(); ++j) {
        s += static_cast<long double>(pv[j]);
        cum[j] = s;
    }
    cum.back() = 1.0L;
    return cum;
}

}  // namespace

double w_ell(const ProbVector& pv, const std::vector<uint8_t>& f, int ell) {
    validate_prob(pv);
    if (f.size() != pv.size()) throw std::domain_error("w_ell: f must have k+1 entries");
    if (ell < 1) throw std::domain_error("w_ell: ell >= 1 required");
    if (ell > 16300) return 0.0;  // below long double resolution
    auto cum = cumulative(pv);
    const long double h = ldexpl(1.0L, -ell);
    const long double block = 2 * h;

    // Disagreement needs a cumulative breakpoint strictly inside a
    // dyadic block of size 2^{1-ell}, so only those blocks are visited.
    std::set<long long> block_ids;
    for (size_t j = 0; j + 1 < cum.size(); ++j) {
        long double c = cum[j];
        if (c <= 0 || c >= 1) continue;
        auto i = static_cast<long long>(floorl(c / block));
        if (c > i * block) block_ids.insert(i);
    }

    long double w = 0;
    for (long long i : block_ids) {
        long double a = i * block;  // lower half A = [a, a+h)
        std::vector<long double> cuts{a, a + h};
        for (size_t j = 0; j + 1 < cum.size(); ++j) {
            long double c = cum[j];
            if (c > a && c < a + h) cuts.push_back(c);
            if (c - h > a && c - h < a + h) cuts.push_back(c - h);
        }
        std::sort(cuts.begin(), cuts.end());
        for (size_t t = 0; t + 1 < cuts.size(); ++t) {
            long double lo = cuts[t], hi = cuts[t + 1];
            if (!(hi > lo)) continue;
            long double mid = lo + (hi - lo) / 2;
            if (f[beta_ld(cum, mid)] != f[beta_ld(cum, mid + h)]) w += hi - lo;
        }
    }
    return static_cast<double>(2 * w);
}

WTotal w_total(const ProbVector& pv, const std::vector<uint8_t>& f, int l_cap) {
    if (l_cap < 1) throw std::domain_error("w_total: l_cap >= 1 required");
    WTotal out;
    for (int ell = 1; ell <= l_cap; ++ell) out.value += w_ell(pv, f, ell);
    auto cum = cumulative(pv);
    long double tail = 0;
    for (size_t j = 0; j + 1 < cum.size(); ++j) {
        long double c = cum[j];
        if (c <= 0 || c >= 1) continue;
        long double qstar = std::min(c, 1 - c);
        for (int ell = l_cap + 1; ell <= l_cap + 1200; ++ell) {
            long double term = 2 * std::min(qstar, ldexpl(1.0L, -ell));
            tail += term;
            if (term < 1e-30L) break;
        }
    }
    out.tail_bound = static_cast<double>(tail);
    return out;
}

double key_bound(const ProbVector& pv) {
    const int k = static_cast<int>(pv.size()) - 1;
    double pmax = p_max_second(pv);
    if (pmax <= 0) return 0;
    return 3.0 * k * k * pmax * std::log(4.0 / pmax);
}

int BooleanTable::coord(size_t index, int j) const {
    size_t stride = 1;
    for (int i = 0; i < j; ++i) stride *= k + 1;
    return static_cast<int>(index / stride % (k + 1));
}

void BooleanTable::validate() const {
    if (k < 1 || n < 1) throw std::domain_error("boolean table: k, n >= 1 required");
    size_t expect = 1;
    for (int i = 0; i < n; ++i) {
        expect *= k + 1;
        if (expect > (1u << 20)) throw std::length_error("boolean table: size cap exceeded");
    }
    if (table.size() != expect) throw std::domain_error("boolean table: wrong table size");
    for (uint8_t v : table)
        if (v > 1) throw std::domain_error("boolean table: values must be 0/1");
}

bool BooleanTable::is_increasing() const {
    size_t stride = 1;
    for (int j = 0; j < n; ++j) {
        for (size_t idx = 0; idx < table.size(); ++idx)
            if (coord(idx, j) < k && table[idx] > table[idx + stride]) return false;
        stride *= k + 1;
    }
    return true;
}

double table_probability(const BooleanTable& f, const ProbVector& pv) {
    f.validate();
    if (static_cast<int>(pv.size()) != f.k + 1)
        throw std::domain_error("table_probability: vector length mismatch");
    double total = 0;
    for (size_t idx = 0; idx < f.table.size(); ++idx) {
        if (!f.table[idx]) continue;
        double wgt = 1;
        for (int j = 0; j < f.n; ++j) wgt *= pv[f.coord(idx, j)];
        total += wgt;
    }
    return total;
}

double influence(const BooleanTable& f, const ProbVector& pv, int j) {
    f.validate();
    if (j < 0 || j >= f.n) throw std::domain_error("influence: coordinate out of range");
    if (static_cast<int>(pv.size()) != f.k + 1)
        throw std::domain_error("influence: vector length mismatch");
    size_t stride = 1;
    for (int i = 0; i < j; ++i) stride *= f.k + 1;
    double total = 0;
    for (size_t idx = 0; idx < f.table.size(); ++idx) {
        if (f.coord(idx, j) != 0) continue;
        bool constant = true;
        for (int v = 1; v <= f.k && constant; ++v)
            if (f.table[idx + v * stride] != f.table[idx]) constant = false;
        if (constant) continue;
        double wgt = 1;
        for (int i = 0; i < f.n; ++i)
            if (i != j) wgt *= pv[f.coord(idx, i)];
        total += wgt;
    }
    return total;
}

double total_influence(const BooleanTable& f, const ProbVector& pv) {
    double s = 0;
    for (int j = 0; j < f.n; ++j) s += influence(f, pv, j);
    return s;
}

namespace {

int table_order(size_t size) {
    int m = 0;
    while ((size_t{1} << m) < size) ++m;
    if ((size_t{1} << m) != size || m > 20)
        throw std::length_error("transform: table size must be 2^m, m <= 20");
    return m;
}

void butterfly(std::vector<double>& a) {
    for (size_t len = 1; len < a.size(); len <<= 1)
        for (size_t i = 0; i < a.size(); i += len << 1)
            for (size_t j = i; j < i + len; ++j) {
                double u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
}

}  // namespace

SpectralVector wht(const std::vector<double>& h) {
    SpectralVector s;
    s.m = table_order(h.size());
    s.coeff = h;
    butterfly(s.coeff);
    double scale = std::ldexp(1.0, -s.m);
    for (double& v : s.coeff) v *= scale;
    return s;
}

std::vector<double> wht_inverse(const SpectralVector& s) {
    std::vector<double> h = s.coeff;
    table_order(h.size());
    butterfly(h);
    return h;
}

std::vector<double> convolve(const std::vector<double>& g, const std::vector<double>& h) {
    if (g.size() != h.size()) throw std::domain_error("convolve: size mismatch");
    SpectralVector sg = wht(g), sh = wht(h);
    for (size_t i = 0; i < sg.coeff.size(); ++i) sg.coeff[i] *= sh.coeff[i];
    return wht_inverse(sg);
}

std::vector<double> noise(double eps, const std::vector<double>& h) {
    SpectralVector s = wht(h);
    for (size_t mask = 0; mask < s.coeff.size(); ++mask)
        s.coeff[mask] *= std::pow(eps, std::popcount(mask));
    return wht_inverse(s);
}

double l2_norm(const std::vector<double>& h) { return lp_norm(h, 2.0); }

double lp_norm(const std::vector<double>& h, double p) {
    int m = table_order(h.size());
    double s = 0;
    for (double v : h) s += std::pow(std::abs(v), p);
    return std::pow(std::ldexp(s, -m), 1.0 / p);
}

double tgw_residual(const std::vector<double>& h) {
    int m = table_order(h.size());
    SpectralVector s = wht(h);
    double lhs = 0;
    for (size_t mask = 0; mask < s.coeff.size(); ++mask)
        lhs += 4.0 * std::popcount(mask) * s.coeff[mask] * s.coeff[mask];
    double rhs = 0;
    for (int ell = 0; ell < m; ++ell) {
        long long differ = 0;
        for (size_t x = 0; x < h.size(); ++x)
            if (h[x] != h[x ^ (size_t{1} << ell)]) ++differ;
        rhs += std::ldexp(static_cast<double>(differ), -m);
    }
    return std::abs(lhs - rhs);
}

LemInflReport check_leminfl(const BooleanTable& f, const ProbVector& pv, double q) {
    f.validate();
    validate_prob(pv);
    LemInflReport rep;
    for (double v : pv)
        if (!(v > 0)) {
            rep.note = "probability vector entries must be strictly positive";
            return rep;
        }
    if (!(q >= p_max_second(pv)) || !(q < 4)) {
        rep.note = "q must satisfy p_max <= q";
        return rep;
    }
    double lq = std::log(4.0 / q);
    double imax = 0;
    for (int j = 0; j < f.n; ++j) imax = std::max(imax, influence(f, pv, j));
    rep.a_star = imax / (q * q * lq * lq);
    rep.total = total_influence(f, pv);
    if (rep.a_star > 1.0 / 16.0) {
        rep.note = "hypothesis not met (a* > 1/16)";
        return rep;
    }
    rep.hypothesis_met = true;
    double t = table_probability(f, pv);
    if (rep.a_star == 0) {
        rep.bound = 0;  // constant f: conclusion reads 0 >= 0
    } else {
        rep.bound = t * (1 - t) * std::log(1.0 / rep.a_star) /
                    (24.0 * f.k * f.k * q * lq);
    }
    rep.margin = rep.total - rep.bound;
    rep.holds = rep.margin >= -1e-12;
    return rep;
}

SharpHypothesisReport sharpnm_hypothesis(const ProbVector& p, const ProbVector& q,
                                         double gamma, double m, double eta) {
    validate_prob(p);
    validate_prob(q);
    if (p.size() != q.size()) throw std::domain_error("sharpnm: length mismatch");
    if (!(eta > 0 && eta < 1)) throw std::domain_error("sharpnm: eta in (0,1) required");
    if (!(gamma >= 0)) throw std::domain_error("sharpnm: gamma >= 0 required");
    const int k = static_cast<int>(p.size()) - 1;
    SharpHypothesisReport rep;
    double qmax = p_max_second(q);
    double rhs = 200.0 * k * k * std::log(1.0 / eta) * qmax * std::log(4.0 / qmax);
    rep.log_minimal_m = gamma > 0 ? rhs / gamma : std::numeric_limits<double>::infinity();
    rep.minimal_m = std::exp(rep.log_minimal_m);
    if (!(p[0] >= gamma)) {
        rep.reason = "p0 < gamma";
        return rep;
    }
    if (!(p[k] <= 1 - gamma)) {
        rep.reason = "p_k > 1 - gamma";
        return rep;
    }
    ProbVector shifted = p;
    shifted[0] -= gamma;
    shifted[k] += gamma;
    if (!dominates(shifted, q)) {
        rep.reason = "q does not dominate the shifted vector";
        return rep;
    }
    if (!(m > 1) || !(gamma * std::log(m) >= rhs)) {
        rep.reason = "gamma log m below the sharp-threshold bound";
        return rep;
    }
    rep.ok = true;
    return rep;
}

double discrete_mr_check(const BooleanTable& f, const ProbVector& pv, double gamma,
                         int steps) {
    f.validate();
    validate_prob(pv);
    if (!f.is_increasing()) throw std::domain_error("discrete_mr_check: f must be increasing");
    if (steps < 2) throw std::domain_error("discrete_mr_check: steps >= 2 required");
    const int k = f.k;
    if (!(gamma > 0 && pv[0] >= gamma && pv[k] + gamma <= 1))
        throw std::domain_error("discrete_mr_check: path leaves the simplex");
    auto along = [&](double h) {
        ProbVector r = pv;
        r[0] -= h;
        r[k] += h;
        return r;
    };
    double s = gamma / steps;
    double residual = 0;
    for (double frac : {0.25, 0.5, 0.75}) {
        double h = gamma * frac;
        if (h - s < 0 || h + s > gamma) continue;
        double fd = (table_probability(f, along(h + s)) - table_probability(f, along(h - s))) /
                    (2 * s);
        double exact = total_influence(f, along(h));
        residual = std::max(residual, std::abs(fd - exact));
    }
    return residual;
}

}  // namespace ersa
