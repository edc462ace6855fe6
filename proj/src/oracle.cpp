#include "ersa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ersa {

double Poly::eval(double p) const {
    double v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly::constant(0);
    Poly d;
    d.c.assign(c.size() - 1, 0.0);
    for (size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), 0.0);
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
}

Poly Poly::scaled(double s) const {
    Poly r = *this;
    for (double& v : r.c) v *= s;
    return r;
}

double Poly::max_coeff_diff(const Poly& o) const {
    double m = 0;
    size_t n = std::max(c.size(), o.c.size());
    for (size_t i = 0; i < n; ++i) {
        double a = i < c.size() ? c[i] : 0.0;
        double b = i < o.c.size() ? o.c[i] : 0.0;
        m = std::max(m, std::abs(a - b));
    }
    return m;
}

OracleInstance OracleInstance::from_window(const Window& w) {
    if (w.kind != Window::Plane) throw std::domain_error("oracle: plane window required");
    if (w.num_octagons() > kOracleMaxSites) throw std::length_error("oracle: too many sites");
    OracleInstance inst;
    inst.window = w;
    const Rect& b = w.bounds;
    for (int y = b.y_lo; y < b.y_hi; ++y)
        for (int x = b.x_lo; x < b.x_hi; ++x) inst.diamonds.push_back(w.octagon_index(x, y));
    return inst;
}

namespace {

struct Enumerator {
    const OracleInstance& inst;
    const Params& params;
    int n;
    std::vector<double> rate;
    std::vector<uint8_t> even;
    std::vector<std::array<int, 4>> nbr;
    std::vector<int> nbr_count;
    std::vector<double>& out;  // occupied-mask -> probability

    Enumerator(const OracleInstance& i, const Params& p, std::vector<double>& o)
        : inst(i), params(p), out(o) {
        const Window& w = inst.window;
        n = w.num_octagons();
        rate.resize(n);
        even.resize(n);
        nbr.resize(n);
        nbr_count.resize(n);
        for (int idx = 0; idx < n; ++idx) {
            Site s = w.octagon_at(idx);
            even[idx] = is_even_octagon(s) ? 1 : 0;
            rate[idx] = even[idx] ? params.lambda : 1.0;
            int tmp[4], cnt;
            blocking_neighbors(w, s.x, s.y, tmp, cnt);
            nbr_count[idx] = cnt;
            for (int j = 0; j < cnt; ++j) nbr[idx][j] = tmp[j];
        }
    }

    // Recursively enumerate arrival orders of the still-empty sites.
    // weight carries P[order so far] times the zero-subset weight.
    void recurse(uint32_t occupied, uint32_t blocked, std::vector<int>& remaining,
                 double weight) {
        if (remaining.empty()) {
            out[occupied] += weight;
            return;
        }
        double rate_sum = 0;
        for (int idx : remaining) rate_sum += rate[idx];
        std::vector<int> rest(remaining.size() - 1);
        for (size_t pick = 0; pick < remaining.size(); ++pick) {
            int idx = remaining[pick];
            double wnext = weight * rate[idx] / rate_sum;
            uint32_t occ = occupied, blk = blocked;
            if (!((blk >> idx) & 1)) {
                occ |= 1u << idx;
                for (int j = 0; j < nbr_count[idx]; ++j) blk |= 1u << nbr[idx][j];
            }
            for (size_t i = 0, k = 0; i < remaining.size(); ++i)
                if (i != pick) rest[k++] = remaining[i];
            recurse(occ, blk, rest, wnext);
        }
    }

    void run() {
        std::vector<int> odd_sites;
        for (int i = 0; i < n; ++i)
            if (!even[i]) odd_sites.push_back(i);
        const double z = -std::expm1(-params.delta);  // P[zero time at an odd site]
        const int m = static_cast<int>(odd_sites.size());
        for (uint32_t sub = 0; sub < (1u << m); ++sub) {
            int bits = __builtin_popcount(sub);
            double wsub = std::pow(z, bits) * std::pow(1 - z, m - bits);
            if (wsub == 0) continue;
            // zero-time odd sites occupy first, in index (lexicographic)
            // order; they are mutually non-adjacent so the order is moot
            uint32_t occ = 0, blk = 0;
            for (int j = 0; j < m; ++j) {
                if (!((sub >> j) & 1)) continue;
                int idx = odd_sites[j];
                if ((blk >> idx) & 1) continue;
                occ |= 1u << idx;
                for (int t = 0; t < nbr_count[idx]; ++t) blk |= 1u << nbr[idx][t];
            }
            std::vector<int> remaining;
            for (int i = 0; i < n; ++i)
                if (!((occ >> i) & 1) && !((sub >> indexOfOdd(odd_sites, i)) & 1))
                    remaining.push_back(i);
            recurse(occ, blk, remaining, wsub);
        }
    }

    static int indexOfOdd(const std::vector<int>& odd_sites, int idx) {
        for (size_t j = 0; j < odd_sites.size(); ++j)
            if (odd_sites[j] == idx) return static_cast<int>(j);
        return 31;  // bit 31 of sub is always 0 for m <= 9
    }
};

}  // namespace

OracleDistribution exact_oracle(const OracleInstance& inst, const Params& params) {
    params.validate();
    const int n = inst.window.num_octagons();
    if (n > kOracleMaxSites) throw std::length_error("oracle: too many sites");
    OracleDistribution d;
    d.prob.assign(1u << n, 0.0);
    Enumerator en(inst, params, d.prob);
    en.run();
    for (double v : d.prob) d.total += v;
    return d;
}

double occupied_probability(const OracleDistribution& d, int site_idx) {
    double v = 0;
    for (uint32_t mask = 0; mask < d.prob.size(); ++mask)
        if ((mask >> site_idx) & 1) v += d.prob[mask];
    return v;
}

JammedColouring colouring_from_masks(const OracleInstance& inst, uint32_t occupied,
                                     uint32_t dia_mask) {
    const Window& w = inst.window;
    const int n = w.num_octagons();
    JammedColouring jc;
    jc.oct_state.resize(n);
    jc.oct_black.assign(n, 0);
    jc.dia_black.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        bool occ = (occupied >> i) & 1;
        jc.oct_state[i] = occ ? OctState::Occupied : OctState::Blocked;
        bool even = is_even_octagon(w.octagon_at(i));
        jc.oct_black[i] = even == occ ? 1 : 0;
    }
    for (size_t j = 0; j < inst.diamonds.size(); ++j)
        if ((dia_mask >> j) & 1) jc.dia_black[inst.diamonds[j]] = 1;
    return jc;
}

Poly oracle_event_poly(const OracleInstance& inst, const Params& params,
                       const std::function<bool(uint32_t, uint32_t)>& event) {
    OracleDistribution d = exact_oracle(inst, params);
    const int nd = static_cast<int>(inst.diamonds.size());
    Poly black{{0.0, 1.0}}, white{{1.0, -1.0}};
    Poly result = Poly::constant(0);
    for (uint32_t occ = 0; occ < d.prob.size(); ++occ) {
        if (d.prob[occ] == 0) continue;
        Poly per_state = Poly::constant(0);
        for (uint32_t dm = 0; dm < (1u << nd); ++dm) {
            if (!event(occ, dm)) continue;
            Poly term = Poly::constant(1);
            for (int j = 0; j < nd; ++j) term = term * (((dm >> j) & 1) ? black : white);
            per_state += term;
        }
        result += per_state.scaled(d.prob[occ]);
    }
    return result;
}

}  // namespace ersa
